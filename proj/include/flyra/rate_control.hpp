#pragma once

#include "flyra/channel.hpp"
#include "flyra/rng.hpp"
#include "flyra/wifi.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flyra {

/// One retry-chain stage: up to max_attempts transmissions at one MCS.
struct TxStage {
    int mcs = 0;
    int max_attempts = 0;
};

/// Retry-chain schedule for a single frame.
struct TxDecision {
    std::vector<TxStage> stages;
    bool sampling = false; // first stage is a probe of a random rate

    int first_stage_mcs() const { return stages.empty() ? -1 : stages.front().mcs; }
    int total_attempts() const;

    /// Coalesces adjacent equal-MCS stages and trims the tail to the attempt cap.
    TxDecision normalized(int attempt_cap) const;
};

/// Outcome of one transmission attempt, reported back to the controller.
struct TxFeedback {
    int mcs_used = 0;
    int attempt_index = 0;  // 0-based, < retry cap
    bool success = false;
    double rx_snr_db = 0.0; // receiver-measured SNR, meaningful only on success
};

/// Per-tick controller internals, for decision traces and tests.
struct ControllerTrace {
    int max_tp = -1;
    int max_tp2 = -1;
    int max_prob = -1;
    int mcs_tara = -1;
};

/// Per-link rate controller interface driven by the simulator.
class RateController {
public:
    virtual ~RateController() = default;

    /// Retry-chain schedule for the next data frame.
    virtual TxDecision decide_frame() = 0;

    /// Per-attempt transmission outcome.
    virtual void on_feedback(const TxFeedback& fb) = 0;

    /**
     * Statistics tick, called every tau seconds. predicted_snr_db is the
     * trajectory-predicted link SNR for the upcoming interval; controllers
     * that do not use prediction ignore it.
     */
    virtual void update_stats(double now_s, double predicted_snr_db) = 0;

    virtual ControllerTrace trace() const = 0;
};

/// Knobs of the Minstrel-HT model (shared by TARA through its inner instance).
struct MinstrelConfig {
    double ewma_weight = 0.25;     // weight of the new observation
    int sample_period_frames = 16; // every Nth data frame probes a random rate
    std::array<int, 3> stage_budgets = {3, 3, 4}; // attempts at max_tp / max_tp2 / max_prob
};

/**
 * Minstrel-HT: per-MCS success statistics smoothed by an EWMA, periodic
 * random sampling, and a three-stage retry chain
 * (max throughput, second-best throughput, best probability).
 */
class MinstrelController : public RateController {
public:
    MinstrelController(const MinstrelConfig& config, const MacTimingConfig& timing, Rng sample_rng);

    TxDecision decide_frame() override;
    void on_feedback(const TxFeedback& fb) override;
    void update_stats(double now_s, double predicted_snr_db) override;
    ControllerTrace trace() const override;

    int max_tp() const { return max_tp_; }
    int max_tp2() const { return max_tp2_; }
    int max_prob() const { return max_prob_; }
    double ewma_success_prob(int mcs) const { return stats_[static_cast<std::size_t>(mcs)].ewma; }
    long attempts_window(int mcs) const
    {
        return stats_[static_cast<std::size_t>(mcs)].attempts_window;
    }
    long successes_window(int mcs) const
    {
        return stats_[static_cast<std::size_t>(mcs)].successes_window;
    }
    double expected_throughput(int mcs) const
    {
        return stats_[static_cast<std::size_t>(mcs)].expected_throughput;
    }

    /// Trajectory-aware promotion: shifts max_tp down to second place in favor of `mcs`.
    void promote_max_tp(int mcs);

    int retry_cap() const { return timing_.retry_cap; }

private:
    struct RateStats {
        long attempts_window = 0;
        long successes_window = 0;
        double ewma = 1.0; // optimistic start so the initial max_tp is the top rate
        double expected_throughput = 0.0;
    };

    void reselect();

    MinstrelConfig config_;
    MacTimingConfig timing_;
    std::array<double, kNumMcs> effective_rate_bps_{}; // payload bits / frame airtime
    std::array<RateStats, kNumMcs> stats_{};
    int max_tp_ = 0;
    int max_tp2_ = 0;
    int max_prob_ = 0;
    int frames_since_sample_ = 0;
    double last_update_s_ = 0.0;
    Rng sample_rng_;
};

/**
 * TARA: Minstrel-HT driven by a trajectory-predicted SNR. Each tick the
 * predicted best rate mcs_tara is computed from the threshold table; if it
 * outranks Minstrel's max_tp it is promoted into the selection, and every
 * frame starts with a fixed 3-attempt stage at mcs_tara (the initial
 * transmission plus 2 retries) before the unmodified Minstrel chain.
 */
class TaraController : public RateController {
public:
    TaraController(const MinstrelConfig& config, const MacTimingConfig& timing, Rng sample_rng,
                   const ThresholdTable& table, bool prediction_enabled = true);

    TxDecision decide_frame() override;
    void on_feedback(const TxFeedback& fb) override;
    void update_stats(double now_s, double predicted_snr_db) override;
    ControllerTrace trace() const override;

    std::optional<int> mcs_tara() const { return mcs_tara_; }
    const MinstrelController& inner() const { return inner_; }

    static constexpr int kTaraRetryLimit = 2; // retries after the initial attempt

private:
    MinstrelController inner_;
    const ThresholdTable* table_;
    std::optional<int> mcs_tara_;
    bool prediction_enabled_;
};

/**
 * Ideal benchmark: the receiver reports each delivered frame's SNR over an
 * out-of-band channel and the sender picks the rate by threshold lookup.
 */
class IdealController : public RateController {
public:
    IdealController(const ThresholdTable& table, int retry_cap);

    TxDecision decide_frame() override;
    void on_feedback(const TxFeedback& fb) override;
    void update_stats(double now_s, double predicted_snr_db) override;
    ControllerTrace trace() const override;

    std::optional<double> last_feedback_snr_db() const { return last_snr_db_; }

private:
    const ThresholdTable* table_;
    int retry_cap_;
    std::optional<double> last_snr_db_;
};

/// Controller factory keyed by the run-configuration algorithm name.
enum class Algorithm { minstrel, tara, ideal, tara_noprediction };

Algorithm algorithm_from_name(const std::string& name); // throws on unknown name
std::string to_string(Algorithm a);

std::unique_ptr<RateController> make_controller(Algorithm algorithm, const MinstrelConfig& config,
                                                const MacTimingConfig& timing,
                                                const ThresholdTable& table, Rng sample_rng);

} // namespace flyra
