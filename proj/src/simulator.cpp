#include "flyra/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace flyra {

std::string to_string(LinkId link)
{
    return link == LinkId::access ? "access" : "relay";
}

double LinkMetrics::total_bits() const
{
    return std::accumulate(delivered_bits.begin(), delivered_bits.end(), 0.0);
}

namespace {

struct LinkRun {
    LinkId id;
    const Trajectory* tx;
    const Trajectory* rx;
    RadioConfig radio;
    std::unique_ptr<RateController> controller;
    Rng loss_rng;
    double now = 0.0;
    double next_tick = 0.0;
    int last_first_stage = -1;
    LinkMetrics metrics;
};

class SimRun {
public:
    SimRun(const Scenario& scenario, Algorithm algorithm, const SimConfig& sim,
           const ThresholdTable& table, std::vector<DecisionTraceRow>* trace)
        : scenario_(scenario), sim_(sim), table_(table), trace_(trace), algorithm_(algorithm),
          duration_(scenario.config.run_duration),
          seconds_(static_cast<std::size_t>(std::ceil(scenario.config.run_duration)))
    {
        sim_.timing.validate();
        access_ = make_link(LinkId::access, scenario.fen, scenario.fgw, sim.access_radio,
                            scenario.config.seed);
        relay_ = make_link(LinkId::relay, scenario.fgw, scenario.bkh, sim.relay_radio,
                           scenario.config.seed);
    }

    RunMetrics run()
    {
        while (access_->now < duration_) {
            const auto [success, completed_at] = transmit_frame(*access_);
            if (success) {
                serve_relay_until(completed_at);
                if (pending_.size() < sim_.queue_capacity) {
                    pending_.push_back(completed_at);
                } else {
                    ++queue_drops_;
                }
            }
        }
        serve_relay_until(duration_);
        // Flush remaining controller ticks so traces cover the full run.
        process_ticks(*access_, duration_);
        process_ticks(*relay_, duration_);

        RunMetrics out;
        out.seed = scenario_.config.seed;
        out.duration_s = duration_;
        out.queue_drops = queue_drops_;
        out.access = finalize(*access_);
        out.relay = finalize(*relay_);
        return out;
    }

private:
    std::unique_ptr<LinkRun> make_link(LinkId id, const Trajectory& tx, const Trajectory& rx,
                                       const RadioConfig& radio, std::uint64_t seed)
    {
        radio.validate();
        const std::string name = to_string(id);
        auto link = std::make_unique<LinkRun>(LinkRun{
            id, &tx, &rx, radio,
            make_controller(algorithm_, sim_.minstrel, sim_.timing, table_,
                            Rng::substream(seed, name + ".sample")),
            Rng::substream(seed, name + ".loss")});
        link->metrics.delivered_bits.assign(seconds_, 0.0);
        link->metrics.busy_us.assign(seconds_, 0.0);
        link->metrics.first_stage_mcs.assign(seconds_, -1);
        link->metrics.distance_m.reserve(seconds_);
        for (std::size_t s = 0; s < seconds_; ++s) {
            link->metrics.distance_m.push_back(
                distance(tx.position_at(static_cast<double>(s)), rx.position_at(static_cast<double>(s))));
        }
        return link;
    }

    /// Runs every controller tick due at or before t, with nominal tick timestamps.
    void process_ticks(LinkRun& link, double t)
    {
        while (link.next_tick <= t && link.next_tick < duration_) {
            const double tick = link.next_tick;
            const double t_pred = tick + sim_.tau_s * 0.5;
            const double d = distance(link.tx->position_at(t_pred), link.rx->position_at(t_pred));
            link.controller->update_stats(tick, snr_db(link.radio, d));
            if (trace_ != nullptr) {
                const ControllerTrace ct = link.controller->trace();
                trace_->push_back({tick, link.id, ct.max_tp, ct.max_tp2, ct.max_prob, ct.mcs_tara,
                                   link.last_first_stage});
            }
            link.next_tick += sim_.tau_s;
        }
    }

    /// Executes one frame's full retry chain. Returns success and the completion time.
    std::pair<bool, double> transmit_frame(LinkRun& link)
    {
        process_ticks(link, link.now);
        const TxDecision decision = link.controller->decide_frame();
        if (!decision.sampling) { // track the steady rate choice, not one-off probes
            link.last_first_stage = decision.first_stage_mcs();
            if (link.now < duration_) {
                link.metrics.first_stage_mcs[second_of(link.now)] = decision.first_stage_mcs();
            }
        }

        int attempt_index = 0;
        for (const TxStage& stage : decision.stages) {
            const McsEntry& mcs = mcs_table()[static_cast<std::size_t>(stage.mcs)];
            const double airtime = frame_airtime_s(mcs, sim_.timing);
            for (int a = 0; a < stage.max_attempts; ++a) {
                process_ticks(link, link.now);
                const double d =
                    distance(link.tx->position_at(link.now), link.rx->position_at(link.now));
                const double snr = snr_db(link.radio, d);
                const double p_success =
                    frame_success_prob(mcs, snr, sim_.timing.payload_bits());
                const bool success = link.loss_rng.uniform() < p_success;
                if (link.now < duration_) {
                    link.metrics.busy_us[second_of(link.now)] += airtime * 1e6;
                }
                link.now += airtime;
                link.controller->on_feedback({stage.mcs, attempt_index, success, snr});
                ++attempt_index;
                if (success) {
                    if (link.now < duration_) {
                        link.metrics.delivered_bits[second_of(link.now)] +=
                            sim_.timing.payload_bits();
                    }
                    ++link.metrics.frames_delivered;
                    return {true, link.now};
                }
            }
        }
        ++link.metrics.frames_dropped;
        return {false, link.now};
    }

    /// Serves queued packets whose relay transmission would start at or before `horizon`.
    void serve_relay_until(double horizon)
    {
        while (!pending_.empty() && relay_->now < duration_) {
            const double start = std::max(relay_->now, pending_.front());
            if (start > horizon || start >= duration_) {
                break;
            }
            relay_->now = start;
            pending_.pop_front();
            transmit_frame(*relay_);
        }
    }

    LinkMetrics finalize(LinkRun& link)
    {
        // Seconds without a frame start keep the previous first-stage rate.
        int last = -1;
        for (int& v : link.metrics.first_stage_mcs) {
            if (v < 0) {
                v = last;
            } else {
                last = v;
            }
        }
        return std::move(link.metrics);
    }

    std::size_t second_of(double t) const
    {
        const auto s = static_cast<std::size_t>(t);
        return std::min(s, seconds_ - 1);
    }

    const Scenario& scenario_;
    SimConfig sim_;
    const ThresholdTable& table_;
    std::vector<DecisionTraceRow>* trace_;
    Algorithm algorithm_ = Algorithm::minstrel;
    double duration_;
    std::size_t seconds_;
    std::unique_ptr<LinkRun> access_;
    std::unique_ptr<LinkRun> relay_;
    std::deque<double> pending_; // arrival times of packets queued at the FGW
    long queue_drops_ = 0;
};

} // namespace

RunMetrics run_simulation(const Scenario& scenario, Algorithm algorithm, const SimConfig& sim,
                          const ThresholdTable& table, std::vector<DecisionTraceRow>* trace)
{
    if (scenario.config.run_duration <= 0.0) {
        RunMetrics out;
        out.seed = scenario.config.seed;
        out.algorithm = algorithm;
        return out;
    }
    SimRun run(scenario, algorithm, sim, table, trace);
    RunMetrics metrics = run.run();
    metrics.algorithm = algorithm;
    return metrics;
}

std::vector<RunMetrics> run_batch(const ScenarioConfig& base_config,
                                  const std::vector<Algorithm>& algorithms,
                                  const std::vector<std::uint64_t>& seeds, const SimConfig& sim,
                                  const ThresholdTable& table, int jobs)
{
    if (algorithms.empty() || seeds.empty()) {
        throw std::invalid_argument("run_batch: algorithms and seeds must be non-empty");
    }
    std::vector<RunMetrics> results(seeds.size() * algorithms.size());
    auto run_seed = [&](std::size_t seed_index) {
        ScenarioConfig config = base_config;
        config.seed = seeds[seed_index];
        const Scenario scenario = make_scenario(config);
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            results[seed_index * algorithms.size() + a] =
                run_simulation(scenario, algorithms[a], sim, table);
        }
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(seeds.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            run_seed(i);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= seeds.size()) {
                        return;
                    }
                    run_seed(i);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    return results;
}

} // namespace flyra
