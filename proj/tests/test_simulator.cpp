#include "flyra/simulator.hpp"

#include "flyra/reporting.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace flyra;

namespace {

const ThresholdTable kTable = build_threshold_table(1e-6);

/// Static three-node scenario with both links at the given distance.
Scenario static_scenario(double link_distance, double duration)
{
    ScenarioConfig config;
    config.run_duration = duration;
    config.delta = std::min(30.0, duration);
    config.seed = 1;
    config.bkh_position = Vec3{0, 500, 20};
    Scenario s;
    s.config = config;
    s.bkh = Trajectory("bkh", {Segment{0.0, {0, 500, 20}, {}, duration}});
    s.fgw = Trajectory("fgw", {Segment{0.0, {link_distance, 500, 20}, {}, duration}});
    s.fen = Trajectory("fen", {Segment{0.0, {2 * link_distance, 500, 20}, {}, duration}});
    return s;
}

} // namespace

TEST_CASE("frame airtime arithmetic")
{
    const MacTimingConfig timing;
    // difs 34 + backoff 67.5 + preamble 40 + data + sifs 16 + ack 40.
    CHECK(frame_airtime_s(mcs_table()[7], timing) == doctest::Approx(369.8076923e-6));
    CHECK(frame_airtime_s(mcs_table()[0], timing) == doctest::Approx(1920.576923e-6));
    // Data portions: 11200 bits over the PHY rate.
    const double fixed = (34.0 + 67.5 + 40.0 + 16.0 + 40.0) * 1e-6;
    CHECK(frame_airtime_s(mcs_table()[7], timing) - fixed == doctest::Approx(172.3076923e-6));
    CHECK(frame_airtime_s(mcs_table()[0], timing) - fixed == doctest::Approx(1723.076923e-6));
    for (int i = 1; i < kNumMcs; ++i) {
        CHECK(frame_airtime_s(mcs_table()[i], timing) <
              frame_airtime_s(mcs_table()[i - 1], timing));
    }
}

TEST_CASE("per-attempt loss draws follow the channel success probability")
{
    // 40 dB above the MCS 7 threshold: at least 999 of 1000 draws succeed.
    const double snr = kTable.thresholds_db[7] + 40.0;
    const double p = frame_success_prob(mcs_table()[7], snr, 11200);
    Rng rng = Rng::substream(7, "loss");
    int successes = 0;
    for (int i = 0; i < 1000; ++i) {
        if (rng.uniform() < p) {
            ++successes;
        }
    }
    CHECK(successes >= 999);

    // Same seed, same inputs, same outcome.
    Rng a = Rng::substream(11, "loss");
    Rng b = Rng::substream(11, "loss");
    for (int i = 0; i < 100; ++i) {
        CHECK(a.uniform() == b.uniform());
    }
}

TEST_CASE("runs are deterministic for a fixed scenario and algorithm")
{
    const Scenario scenario = make_scenario(ScenarioConfig{.run_duration = 20.0, .seed = 5});
    const SimConfig sim;
    for (Algorithm alg : {Algorithm::minstrel, Algorithm::tara, Algorithm::ideal}) {
        const RunMetrics a = run_simulation(scenario, alg, sim, kTable);
        const RunMetrics b = run_simulation(scenario, alg, sim, kTable);
        std::ostringstream csv_a;
        std::ostringstream csv_b;
        write_run_csv(csv_a, a);
        write_run_csv(csv_b, b);
        CHECK(csv_a.str() == csv_b.str());
        CHECK(a.relay.total_bits() == b.relay.total_bits());
        CHECK(a.queue_drops == b.queue_drops);
    }
}

TEST_CASE("zero-length run produces all-zero metrics")
{
    Scenario scenario;
    scenario.config.run_duration = 0.0;
    const RunMetrics m = run_simulation(scenario, Algorithm::minstrel, SimConfig{}, kTable);
    CHECK(m.access.delivered_bits.empty());
    CHECK(m.relay.delivered_bits.empty());
    CHECK(m.access.frames_delivered == 0);
    CHECK(m.queue_drops == 0);
}

TEST_CASE("relay delivery never exceeds access delivery")
{
    const SimConfig sim;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Scenario scenario = make_scenario(ScenarioConfig{.run_duration = 60.0, .seed = seed});
        for (Algorithm alg : {Algorithm::minstrel, Algorithm::tara, Algorithm::ideal}) {
            const RunMetrics m = run_simulation(scenario, alg, sim, kTable);
            CHECK(m.relay.frames_delivered <= m.access.frames_delivered);
            CHECK(m.relay.total_bits() <= m.access.total_bits());
        }
    }
}

TEST_CASE("airtime accounting stays within each second")
{
    const Scenario scenario = make_scenario(ScenarioConfig{.run_duration = 30.0, .seed = 3});
    const SimConfig sim;
    const double max_airtime_us = frame_airtime_s(mcs_table()[0], sim.timing) * 1e6;
    const RunMetrics m = run_simulation(scenario, Algorithm::minstrel, sim, kTable);
    for (double busy : m.access.busy_us) {
        CHECK(busy <= 1e6 + max_airtime_us);
    }
    // Saturation: the access link is never idle waiting for data.
    for (std::size_t s = 0; s + 1 < m.access.busy_us.size(); ++s) {
        CHECK(m.access.busy_us[s] >= 1e6 - max_airtime_us);
    }
}

TEST_CASE("static link: all controllers settle on the best rate and ideal hits saturation")
{
    // Both links 50 m apart: SNR is far above the MCS 7 threshold.
    const Scenario scenario = static_scenario(50.0, 10.0);
    const SimConfig sim;
    const double sat_bps = sim.timing.payload_bits() / frame_airtime_s(mcs_table()[7], sim.timing);

    for (Algorithm alg : {Algorithm::minstrel, Algorithm::tara, Algorithm::ideal}) {
        const RunMetrics m = run_simulation(scenario, alg, sim, kTable);
        // First-stage rate reaches MCS 7 within 2 s on both links.
        for (const LinkMetrics* lm : {&m.access, &m.relay}) {
            for (std::size_t s = 2; s < lm->first_stage_mcs.size(); ++s) {
                CHECK(lm->first_stage_mcs[s] == 7);
            }
        }
        if (alg == Algorithm::ideal) {
            double post_warmup = 0.0;
            for (std::size_t s = 2; s < m.relay.delivered_bits.size(); ++s) {
                post_warmup += m.relay.delivered_bits[s];
            }
            const double mean = post_warmup / (m.relay.delivered_bits.size() - 2);
            CHECK(mean == doctest::Approx(sat_bps).epsilon(0.05));
        }
    }
}

TEST_CASE("tara first-stage rate matches ideal steady state on static links")
{
    for (double d : {80.0, 200.0, 350.0, 500.0}) {
        const Scenario scenario = static_scenario(d, 8.0);
        const SimConfig sim;
        const RunMetrics tara = run_simulation(scenario, Algorithm::tara, sim, kTable);
        const RunMetrics ideal = run_simulation(scenario, Algorithm::ideal, sim, kTable);
        for (std::size_t s = 2; s < tara.access.first_stage_mcs.size(); ++s) {
            CHECK(tara.access.first_stage_mcs[s] == ideal.access.first_stage_mcs[s]);
        }
    }
}

TEST_CASE("batch pairs algorithms on identical scenarios")
{
    const ScenarioConfig config{.run_duration = 10.0};
    const SimConfig sim;
    const std::vector<Algorithm> algorithms = {Algorithm::minstrel, Algorithm::tara,
                                               Algorithm::ideal};
    const std::vector<std::uint64_t> seeds = {1, 2};
    const auto batch = run_batch(config, algorithms, seeds, sim, kTable, 2);
    REQUIRE(batch.size() == 6);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(batch[i].seed == seeds[i / algorithms.size()]);
        CHECK(batch[i].algorithm == algorithms[i % algorithms.size()]);
        // Distances are scenario properties: identical across algorithms of one seed.
        CHECK(batch[i].access.distance_m ==
              batch[(i / algorithms.size()) * algorithms.size()].access.distance_m);
    }

    // Worker count does not change results.
    const auto serial = run_batch(config, algorithms, seeds, sim, kTable, 1);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(batch[i].relay.total_bits() == serial[i].relay.total_bits());
    }

    CHECK_THROWS_AS(run_batch(config, {}, seeds, sim, kTable), std::invalid_argument);
}

TEST_CASE("tara with prediction disabled reproduces minstrel inside the simulator")
{
    const SimConfig sim;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Scenario scenario = make_scenario(ScenarioConfig{.run_duration = 30.0, .seed = seed});
        std::vector<DecisionTraceRow> trace_a;
        std::vector<DecisionTraceRow> trace_b;
        const RunMetrics a = run_simulation(scenario, Algorithm::minstrel, sim, kTable, &trace_a);
        const RunMetrics b =
            run_simulation(scenario, Algorithm::tara_noprediction, sim, kTable, &trace_b);
        CHECK(a.access.total_bits() == b.access.total_bits());
        CHECK(a.relay.total_bits() == b.relay.total_bits());
        REQUIRE(trace_a.size() == trace_b.size());
        for (std::size_t i = 0; i < trace_a.size(); ++i) {
            CHECK(trace_a[i].time_s == trace_b[i].time_s);
            CHECK(trace_a[i].max_tp == trace_b[i].max_tp);
            CHECK(trace_a[i].max_tp2 == trace_b[i].max_tp2);
            CHECK(trace_a[i].max_prob == trace_b[i].max_prob);
            CHECK(trace_a[i].first_stage_mcs == trace_b[i].first_stage_mcs);
        }
    }
}

TEST_CASE("run csv has one row per second per link")
{
    const Scenario scenario = make_scenario(ScenarioConfig{.run_duration = 12.0, .seed = 2});
    const RunMetrics m = run_simulation(scenario, Algorithm::ideal, SimConfig{}, kTable);
    std::ostringstream os;
    write_run_csv(os, m);
    std::istringstream is(os.str());
    std::string line;
    int rows = 0;
    std::getline(is, line);
    CHECK(line == "time_s,link,delivered_bits,distance_m,first_stage_mcs");
    while (std::getline(is, line)) {
        ++rows;
    }
    CHECK(rows == 24);
}
