#pragma once

#include "flyra/rate_control.hpp"
#include "flyra/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flyra {

/// Simulation knobs shared by every run of a batch.
struct SimConfig {
    MacTimingConfig timing;
    RadioConfig access_radio; // FEN -> FGW, defaults to channel 36 (5180 MHz)
    RadioConfig relay_radio;  // FGW -> BKH, defaults to channel 48 (5240 MHz)
    MinstrelConfig minstrel;
    double tau_s = 0.050;          // controller statistics period
    std::size_t queue_capacity = 1000; // FGW relay queue, drop-tail

    SimConfig() { relay_radio.carrier_frequency_hz = 5.24e9; }
};

enum class LinkId { access, relay };
std::string to_string(LinkId link);

/// Per-second decision trace row (one per controller tick).
struct DecisionTraceRow {
    double time_s;
    LinkId link;
    int max_tp;
    int max_tp2;
    int max_prob;
    int mcs_tara;
    int first_stage_mcs;
};

/// Per-link per-second measurements of one run.
struct LinkMetrics {
    std::vector<double> delivered_bits;   // payload bits delivered per second at the receiver
    std::vector<double> busy_us;          // airtime spent per second (attempt start attribution)
    std::vector<double> distance_m;       // link distance sampled at each second start
    std::vector<int> first_stage_mcs;     // first-stage MCS of the last frame started each second
    long frames_delivered = 0;
    long frames_dropped = 0;              // retry cap exhausted

    double total_bits() const;
    double mean_throughput_bps(double duration_s) const { return total_bits() / duration_s; }
};

struct RunMetrics {
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::minstrel;
    double duration_s = 0.0;
    LinkMetrics access;
    LinkMetrics relay;
    long queue_drops = 0; // relay queue overflow

    const LinkMetrics& link(LinkId id) const { return id == LinkId::access ? access : relay; }
};

/**
 * Runs one seed/algorithm combination: saturated uplink traffic on the
 * access link, relay forwarding over the independent relay link, Bernoulli
 * frame losses from the Friis/NIST channel, and per-second MAC throughput
 * accounting. Deterministic for a fixed (scenario, algorithm) pair.
 */
RunMetrics run_simulation(const Scenario& scenario, Algorithm algorithm, const SimConfig& sim,
                          const ThresholdTable& table,
                          std::vector<DecisionTraceRow>* trace = nullptr);

/**
 * Paired batch: one scenario per seed, every algorithm simulated on the
 * identical scenario. Rows are ordered seed-major, then by algorithm list
 * order, independent of the worker count.
 */
std::vector<RunMetrics> run_batch(const ScenarioConfig& base_config,
                                  const std::vector<Algorithm>& algorithms,
                                  const std::vector<std::uint64_t>& seeds, const SimConfig& sim,
                                  const ThresholdTable& table, int jobs = 1);

} // namespace flyra
