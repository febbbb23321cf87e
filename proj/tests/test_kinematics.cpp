#include "flyra/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace flyra;

namespace {

ScenarioConfig default_config(std::uint64_t seed)
{
    ScenarioConfig config;
    config.seed = seed;
    return config;
}

} // namespace

TEST_CASE("position_at follows the active segment linearly")
{
    Trajectory traj("n", {Segment{0.0, {0, 0, 0}, {8, 0, 0}, 30.0}});
    const Vec3 p = traj.position_at(10.0);
    CHECK(p.x == doctest::Approx(80.0));
    CHECK(p.y == doctest::Approx(0.0));
}

TEST_CASE("position is frozen once the node has stopped flying")
{
    Trajectory traj("n", {Segment{0.0, {0, 0, 0}, {8, 0, 0}, 30.0}});
    const Vec3 p = traj.position_at(40.0);
    CHECK(p.x == doctest::Approx(240.0));
    CHECK(traj.position_at(1e6).x == doctest::Approx(240.0));
}

TEST_CASE("zero-velocity segment holds position")
{
    Trajectory traj("n", {Segment{0.0, {5, 5, 0}, {0, 0, 0}, 300.0}});
    const Vec3 p = traj.position_at(123.0);
    CHECK(p.x == doctest::Approx(5.0));
    CHECK(p.y == doctest::Approx(5.0));
}

TEST_CASE("empty trajectory reports an error")
{
    Trajectory traj("n", {});
    CHECK_THROWS_AS(traj.position_at(0.0), std::invalid_argument);
}

TEST_CASE("distance examples")
{
    CHECK(distance({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
    CHECK(distance({1, 1, 1}, {1, 1, 1}) == doctest::Approx(0.0));
    CHECK(distance({0, 0, 0}, {1000, 1000, 0}) == doctest::Approx(1414.213562373095));
    CHECK(distance({3, 4, 0}, {0, 0, 0}) == distance({0, 0, 0}, {3, 4, 0}));
}

TEST_CASE("generated trajectories are deterministic per seed")
{
    const ScenarioConfig config = default_config(42);
    const Trajectory a = generate_fen_trajectory(config);
    const Trajectory b = generate_fen_trajectory(config);
    REQUIRE(a.segments().size() == b.segments().size());
    for (std::size_t i = 0; i < a.segments().size(); ++i) {
        CHECK(a.segments()[i].start_time == b.segments()[i].start_time);
        CHECK(a.segments()[i].origin == b.segments()[i].origin);
        CHECK(a.segments()[i].velocity == b.segments()[i].velocity);
        CHECK(a.segments()[i].duration == b.segments()[i].duration);
    }

    const Trajectory c = generate_fen_trajectory(default_config(43));
    CHECK(c.position_at(0.0).x != a.position_at(0.0).x);
}

TEST_CASE("generated positions stay inside the arena at flight altitude")
{
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const ScenarioConfig config = default_config(seed);
        const Trajectory traj = generate_fen_trajectory(config);
        for (int t = 0; t <= 300; ++t) {
            const Vec3 p = traj.position_at(t);
            CHECK(p.x >= -1e-9);
            CHECK(p.x <= config.arena_side + 1e-9);
            CHECK(p.y >= -1e-9);
            CHECK(p.y <= config.arena_side + 1e-9);
            CHECK(p.z == doctest::Approx(config.altitude));
        }
    }
}

TEST_CASE("generated segment speeds are either zero or fen_speed")
{
    for (std::uint64_t seed : {7, 8, 9}) {
        const Trajectory traj = generate_fen_trajectory(default_config(seed));
        for (const Segment& s : traj.segments()) {
            const double speed = norm(s.velocity);
            const bool moving = std::abs(speed - 8.0) < 1e-9;
            const bool holding = speed < 1e-12;
            CHECK((moving || holding));
        }
    }
}

TEST_CASE("movements start at epoch boundaries and last at most delta")
{
    const ScenarioConfig config = default_config(11);
    const Trajectory traj = generate_fen_trajectory(config);
    for (const Segment& s : traj.segments()) {
        if (norm(s.velocity) > 0.0) {
            const double epoch = s.start_time / config.delta;
            CHECK(epoch == doctest::Approx(std::round(epoch)));
            CHECK(s.duration <= config.delta + 1e-12);
        }
    }
    // Segments are contiguous: each starts where the previous ended.
    for (std::size_t i = 1; i < traj.segments().size(); ++i) {
        const Segment& prev = traj.segments()[i - 1];
        const Segment& cur = traj.segments()[i];
        CHECK(cur.start_time == doctest::Approx(prev.end_time()));
        CHECK(distance(cur.origin, prev.end_position()) < 1e-9);
    }
}

TEST_CASE("fgw mirrors a fen movement at half speed from the midpoint")
{
    ScenarioConfig config = default_config(1);
    config.bkh_position = Vec3{0, 500, 20};
    const Trajectory fen("fen", {Segment{0.0, {400, 100, 20}, {8, 0, 0}, 30.0}});
    const Trajectory fgw = derive_fgw_trajectory(fen, config);
    REQUIRE(fgw.segments().size() == 1);
    const Segment& s = fgw.segments().front();
    CHECK(s.origin.x == doctest::Approx(200.0));
    CHECK(s.origin.y == doctest::Approx(300.0));
    CHECK(norm(s.velocity) == doctest::Approx(4.0));
    const Vec3 end = fgw.position_at(30.0);
    CHECK(end.x == doctest::Approx(320.0));
    CHECK(end.y == doctest::Approx(300.0));
}

TEST_CASE("stationary fen epoch yields a stationary fgw epoch")
{
    const ScenarioConfig config = default_config(1);
    const Trajectory fen("fen", {Segment{0.0, {250, 250, 20}, {0, 0, 0}, 60.0}});
    const Trajectory fgw = derive_fgw_trajectory(fen, config);
    CHECK(norm(fgw.segments().front().velocity) == doctest::Approx(0.0));
}

TEST_CASE("fgw satisfies the midpoint identity at 1 Hz over seeded scenarios")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Scenario s = make_scenario(default_config(seed));
        const Vec3 bkh = s.config.bkh();
        for (int t = 0; t <= 300; ++t) {
            const Vec3 expected = midpoint(bkh, s.fen.position_at(t));
            CHECK(distance(s.fgw.position_at(t), expected) < 1e-9);
        }
    }
}

TEST_CASE("trajectories are continuous in time")
{
    const Trajectory traj = generate_fen_trajectory(default_config(17));
    const double eps = 1e-3;
    for (double t = 0.0; t < 300.0; t += 0.37) {
        const double step = distance(traj.position_at(t + eps), traj.position_at(t));
        CHECK(step <= 8.0 * eps + 1e-9);
    }
}

TEST_CASE("scenario csv round-trips trajectories")
{
    const Scenario s = make_scenario(default_config(23));
    std::stringstream buffer(scenario_csv(s));
    const std::vector<Trajectory> parsed = read_scenario_csv(buffer);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].node_id() == "fen");
    CHECK(parsed[1].node_id() == "fgw");
    CHECK(parsed[2].node_id() == "bkh");
    for (int t = 0; t <= 300; t += 10) {
        CHECK(distance(parsed[0].position_at(t), s.fen.position_at(t)) < 1e-5);
        CHECK(distance(parsed[1].position_at(t), s.fgw.position_at(t)) < 1e-5);
    }
}

TEST_CASE("scenario config validation")
{
    ScenarioConfig bad = default_config(1);
    bad.delta = 0.0;
    CHECK_THROWS_AS(generate_fen_trajectory(bad), std::invalid_argument);
    bad = default_config(1);
    bad.arena_side = -5.0;
    CHECK_THROWS_AS(generate_fen_trajectory(bad), std::invalid_argument);
    bad = default_config(1);
    bad.delta = 400.0; // larger than run_duration
    CHECK_THROWS_AS(generate_fen_trajectory(bad), std::invalid_argument);
}
