#include "flyra/scenario.hpp"

#include "flyra/csv.hpp"
#include "flyra/rng.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace flyra {

void ScenarioConfig::validate() const
{
    if (arena_side <= 0.0) {
        throw std::invalid_argument("arena_side must be > 0");
    }
    if (delta <= 0.0 || delta > run_duration) {
        throw std::invalid_argument("delta must satisfy 0 < delta <= run_duration");
    }
    if (fen_speed <= 0.0) {
        throw std::invalid_argument("fen_speed must be > 0");
    }
}

namespace {

/// Largest travel distance from `pos` along unit `dir` that stays inside [0, side]^2.
double distance_to_boundary(const Vec3& pos, const Vec3& dir, double side)
{
    double limit = std::numeric_limits<double>::infinity();
    auto axis = [&](double p, double d) {
        if (d > 0.0) {
            limit = std::min(limit, (side - p) / d);
        } else if (d < 0.0) {
            limit = std::min(limit, -p / d);
        }
    };
    axis(pos.x, dir.x);
    axis(pos.y, dir.y);
    return std::max(limit, 0.0);
}

} // namespace

Trajectory generate_fen_trajectory(const ScenarioConfig& config)
{
    config.validate();
    Rng init_rng = Rng::substream(config.seed, "fen.initial");
    Rng dir_rng = Rng::substream(config.seed, "fen.direction");
    Rng len_rng = Rng::substream(config.seed, "fen.length");

    Vec3 pos{init_rng.uniform(0.0, config.arena_side), init_rng.uniform(0.0, config.arena_side),
             config.altitude};

    const int epochs = static_cast<int>(std::ceil(config.run_duration / config.delta));
    const double max_length = config.fen_speed * config.delta;

    std::vector<Segment> segments;
    for (int e = 0; e < epochs; ++e) {
        const double t0 = e * config.delta;
        const double theta = dir_rng.uniform(0.0, 2.0 * std::numbers::pi);
        // 1 - u maps [0,1) onto the half-open interval (0, max_length].
        double length = (1.0 - len_rng.uniform()) * max_length;
        const Vec3 dir{std::cos(theta), std::sin(theta), 0.0};
        length = std::min(length, distance_to_boundary(pos, dir, config.arena_side));

        const double t_move = length / config.fen_speed;
        if (t_move > 0.0) {
            segments.push_back({t0, pos, dir * config.fen_speed, t_move});
            pos = segments.back().end_position();
            pos.x = std::clamp(pos.x, 0.0, config.arena_side);
            pos.y = std::clamp(pos.y, 0.0, config.arena_side);
        }
        if (t_move < config.delta) {
            segments.push_back({t0 + t_move, pos, Vec3{}, config.delta - t_move});
        }
    }
    return Trajectory("fen", std::move(segments));
}

Trajectory derive_fgw_trajectory(const Trajectory& fen, const ScenarioConfig& config)
{
    const Vec3 bkh = config.bkh();
    std::vector<Segment> segments;
    segments.reserve(fen.segments().size());
    for (const Segment& s : fen.segments()) {
        // midpoint(bkh, origin + v*t) == midpoint(bkh, origin) + (v/2)*t, so halving the
        // velocity keeps the FGW on the midpoint for every intermediate time as well.
        segments.push_back({s.start_time, midpoint(bkh, s.origin), s.velocity * 0.5, s.duration});
    }
    return Trajectory("fgw", std::move(segments));
}

Scenario make_scenario(const ScenarioConfig& config)
{
    Scenario s;
    s.config = config;
    s.fen = generate_fen_trajectory(config);
    s.fgw = derive_fgw_trajectory(s.fen, config);
    s.bkh = Trajectory("bkh", {Segment{0.0, config.bkh(), Vec3{}, config.run_duration}});
    return s;
}

void write_scenario_csv(std::ostream& os, const Scenario& scenario)
{
    os << "node_id,segment_index,start_time,origin_x,origin_y,origin_z,"
          "velocity_x,velocity_y,velocity_z,duration\n";
    for (const Trajectory* traj : {&scenario.fen, &scenario.fgw, &scenario.bkh}) {
        int index = 0;
        for (const Segment& s : traj->segments()) {
            os << traj->node_id() << ',' << index++ << ',' << csv::num(s.start_time) << ','
               << csv::num(s.origin.x) << ',' << csv::num(s.origin.y) << ','
               << csv::num(s.origin.z) << ',' << csv::num(s.velocity.x) << ','
               << csv::num(s.velocity.y) << ',' << csv::num(s.velocity.z) << ','
               << csv::num(s.duration) << '\n';
        }
    }
}

std::string scenario_csv(const Scenario& scenario)
{
    std::ostringstream os;
    write_scenario_csv(os, scenario);
    return os.str();
}

std::vector<Trajectory> read_scenario_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("scenario csv: empty input");
    }
    std::map<std::string, std::vector<Segment>> by_node;
    std::vector<std::string> order;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        auto f = csv::split(line);
        if (f.size() != 10) {
            throw std::runtime_error("scenario csv: expected 10 fields, got line '" + line + "'");
        }
        Segment s;
        s.start_time = std::stod(f[2]);
        s.origin = {std::stod(f[3]), std::stod(f[4]), std::stod(f[5])};
        s.velocity = {std::stod(f[6]), std::stod(f[7]), std::stod(f[8])};
        s.duration = std::stod(f[9]);
        if (by_node.find(f[0]) == by_node.end()) {
            order.push_back(f[0]);
        }
        by_node[f[0]].push_back(s);
    }
    std::vector<Trajectory> out;
    out.reserve(order.size());
    for (const std::string& id : order) {
        out.emplace_back(id, std::move(by_node[id]));
    }
    return out;
}

} // namespace flyra
