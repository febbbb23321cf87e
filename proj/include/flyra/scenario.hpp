#pragma once

#include "flyra/trajectory.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace flyra {

/**
 * Parameters of the random three-node scenario: a flying edge node (FEN)
 * wandering a square arena, a flying gateway (FGW) pinned to the midpoint
 * between the FEN and a fixed backhaul node (BKH).
 */
struct ScenarioConfig {
    double arena_side = 1000.0;   // m, square side
    double run_duration = 300.0;  // s
    double delta = 30.0;          // s, trajectory update period
    double fen_speed = 8.0;       // m/s while moving
    double altitude = 20.0;       // m, shared constant flight altitude
    std::uint64_t seed = 1;

    /// BKH position; defaults to the midpoint of the x=0 arena edge at flight altitude.
    std::optional<Vec3> bkh_position;

    Vec3 bkh() const
    {
        return bkh_position.value_or(Vec3{0.0, arena_side * 0.5, altitude});
    }

    void validate() const; // throws std::invalid_argument on bad values
};

struct Scenario {
    Trajectory fen;
    Trajectory fgw;
    Trajectory bkh;
    ScenarioConfig config;
};

/**
 * Random FEN trajectory: initial position uniform over the arena, then one
 * elementary movement per delta-long epoch. Each epoch draws a direction
 * uniform in [0, 2pi) and a path length uniform in (0, speed*delta],
 * truncated at the arena boundary; the node moves at fen_speed for
 * t_m = length/speed seconds and holds position for the rest of the epoch.
 */
Trajectory generate_fen_trajectory(const ScenarioConfig& config);

/**
 * FGW trajectory mirroring the FEN: every segment starts at the midpoint of
 * BKH and the FEN segment origin and moves at half the FEN velocity, so the
 * FGW sits at midpoint(BKH, FEN(t)) for every t.
 */
Trajectory derive_fgw_trajectory(const Trajectory& fen, const ScenarioConfig& config);

/// Builds the full scenario (FEN + derived FGW + stationary BKH).
Scenario make_scenario(const ScenarioConfig& config);

/// Plain-text table of all segments: node_id,segment_index,start_time,origin_*,velocity_*,duration.
void write_scenario_csv(std::ostream& os, const Scenario& scenario);
std::string scenario_csv(const Scenario& scenario);

/// Parses the CSV produced by write_scenario_csv back into trajectories (config is not round-tripped).
std::vector<Trajectory> read_scenario_csv(std::istream& is);

} // namespace flyra
