#include "flyra/rate_control.hpp"

#include <algorithm>
#include <stdexcept>

namespace flyra {

int TxDecision::total_attempts() const
{
    int total = 0;
    for (const TxStage& s : stages) {
        total += s.max_attempts;
    }
    return total;
}

TxDecision TxDecision::normalized(int attempt_cap) const
{
    TxDecision out;
    out.sampling = sampling;
    int remaining = attempt_cap;
    for (const TxStage& s : stages) {
        if (remaining <= 0) {
            break;
        }
        const int attempts = std::min(s.max_attempts, remaining);
        if (attempts <= 0) {
            continue;
        }
        if (!out.stages.empty() && out.stages.back().mcs == s.mcs) {
            out.stages.back().max_attempts += attempts;
        } else {
            out.stages.push_back({s.mcs, attempts});
        }
        remaining -= attempts;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minstrel-HT
// ---------------------------------------------------------------------------

MinstrelController::MinstrelController(const MinstrelConfig& config, const MacTimingConfig& timing,
                                       Rng sample_rng)
    : config_(config), timing_(timing), sample_rng_(sample_rng)
{
    for (const McsEntry& mcs : mcs_table()) {
        effective_rate_bps_[static_cast<std::size_t>(mcs.index)] =
            timing_.payload_bits() / frame_airtime_s(mcs, timing_);
    }
    for (int i = 0; i < kNumMcs; ++i) {
        stats_[static_cast<std::size_t>(i)].expected_throughput =
            stats_[static_cast<std::size_t>(i)].ewma * effective_rate_bps_[static_cast<std::size_t>(i)];
    }
    reselect();
}

void MinstrelController::reselect()
{
    // Ties break toward the higher MCS index for deterministic selections.
    int best = 0;
    for (int i = 1; i < kNumMcs; ++i) {
        if (stats_[static_cast<std::size_t>(i)].expected_throughput >=
            stats_[static_cast<std::size_t>(best)].expected_throughput) {
            best = i;
        }
    }
    max_tp_ = best;

    int second = -1;
    for (int i = 0; i < kNumMcs; ++i) {
        if (i == max_tp_) {
            continue;
        }
        if (second < 0 || stats_[static_cast<std::size_t>(i)].expected_throughput >=
                              stats_[static_cast<std::size_t>(second)].expected_throughput) {
            second = i;
        }
    }
    max_tp2_ = second;

    int prob = 0;
    for (int i = 1; i < kNumMcs; ++i) {
        if (stats_[static_cast<std::size_t>(i)].ewma >= stats_[static_cast<std::size_t>(prob)].ewma) {
            prob = i;
        }
    }
    max_prob_ = prob;
}

void MinstrelController::update_stats(double now_s, double /*predicted_snr_db*/)
{
    for (auto& s : stats_) {
        if (s.attempts_window > 0) {
            const double observed =
                static_cast<double>(s.successes_window) / static_cast<double>(s.attempts_window);
            s.ewma = (1.0 - config_.ewma_weight) * s.ewma + config_.ewma_weight * observed;
        }
        s.attempts_window = 0;
        s.successes_window = 0;
    }
    for (int i = 0; i < kNumMcs; ++i) {
        stats_[static_cast<std::size_t>(i)].expected_throughput =
            stats_[static_cast<std::size_t>(i)].ewma * effective_rate_bps_[static_cast<std::size_t>(i)];
    }
    reselect();
    last_update_s_ = now_s;
}

TxDecision MinstrelController::decide_frame()
{
    TxDecision d;
    ++frames_since_sample_;
    if (frames_since_sample_ >= config_.sample_period_frames) {
        frames_since_sample_ = 0;
        d.sampling = true;
        // Uniform over the rates other than max_tp, probed with a single attempt.
        int sample = static_cast<int>(sample_rng_.uniform_int(kNumMcs - 1));
        if (sample >= max_tp_) {
            ++sample;
        }
        d.stages.push_back({sample, 1});
    }
    d.stages.push_back({max_tp_, config_.stage_budgets[0]});
    d.stages.push_back({max_tp2_, config_.stage_budgets[1]});
    d.stages.push_back({max_prob_, config_.stage_budgets[2]});
    return d.normalized(timing_.retry_cap);
}

void MinstrelController::on_feedback(const TxFeedback& fb)
{
    auto& s = stats_[static_cast<std::size_t>(fb.mcs_used)];
    ++s.attempts_window;
    if (fb.success) {
        ++s.successes_window;
    }
}

void MinstrelController::promote_max_tp(int mcs)
{
    max_tp2_ = max_tp_;
    max_tp_ = mcs;
}

ControllerTrace MinstrelController::trace() const
{
    return {max_tp_, max_tp2_, max_prob_, -1};
}

// ---------------------------------------------------------------------------
// TARA
// ---------------------------------------------------------------------------

TaraController::TaraController(const MinstrelConfig& config, const MacTimingConfig& timing,
                               Rng sample_rng, const ThresholdTable& table, bool prediction_enabled)
    : inner_(config, timing, sample_rng), table_(&table), prediction_enabled_(prediction_enabled)
{
}

void TaraController::update_stats(double now_s, double predicted_snr_db)
{
    inner_.update_stats(now_s, predicted_snr_db);
    if (!prediction_enabled_) {
        return;
    }
    mcs_tara_ = table_->mcs_for_snr(predicted_snr_db);
    const auto& table = mcs_table();
    // Rate comparison; equivalent to index order within the fixed single-stream group.
    if (table[static_cast<std::size_t>(*mcs_tara_)].phy_rate_bps >
        table[static_cast<std::size_t>(inner_.max_tp())].phy_rate_bps) {
        inner_.promote_max_tp(*mcs_tara_);
    }
}

TxDecision TaraController::decide_frame()
{
    TxDecision d = inner_.decide_frame();
    if (!mcs_tara_) {
        return d;
    }
    TxDecision out;
    out.sampling = d.sampling;
    out.stages.push_back({*mcs_tara_, 1 + kTaraRetryLimit});
    out.stages.insert(out.stages.end(), d.stages.begin(), d.stages.end());
    return out.normalized(inner_.retry_cap());
}

void TaraController::on_feedback(const TxFeedback& fb)
{
    inner_.on_feedback(fb);
}

ControllerTrace TaraController::trace() const
{
    ControllerTrace t = inner_.trace();
    t.mcs_tara = mcs_tara_.value_or(-1);
    return t;
}

// ---------------------------------------------------------------------------
// Ideal
// ---------------------------------------------------------------------------

IdealController::IdealController(const ThresholdTable& table, int retry_cap)
    : table_(&table), retry_cap_(retry_cap)
{
}

TxDecision IdealController::decide_frame()
{
    TxDecision d;
    const int mcs = last_snr_db_ ? table_->mcs_for_snr(*last_snr_db_) : 0;
    d.stages.push_back({mcs, retry_cap_});
    return d;
}

void IdealController::on_feedback(const TxFeedback& fb)
{
    if (fb.success) {
        last_snr_db_ = fb.rx_snr_db;
    }
}

void IdealController::update_stats(double /*now_s*/, double /*predicted_snr_db*/) {}

ControllerTrace IdealController::trace() const
{
    return {};
}

// ---------------------------------------------------------------------------
// Factory
// ---------------------------------------------------------------------------

Algorithm algorithm_from_name(const std::string& name)
{
    if (name == "minstrel") {
        return Algorithm::minstrel;
    }
    if (name == "tara") {
        return Algorithm::tara;
    }
    if (name == "ideal") {
        return Algorithm::ideal;
    }
    if (name == "tara-nopredict") {
        return Algorithm::tara_noprediction;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::minstrel:
        return "minstrel";
    case Algorithm::tara:
        return "tara";
    case Algorithm::ideal:
        return "ideal";
    case Algorithm::tara_noprediction:
        return "tara-nopredict";
    }
    return "?";
}

std::unique_ptr<RateController> make_controller(Algorithm algorithm, const MinstrelConfig& config,
                                                const MacTimingConfig& timing,
                                                const ThresholdTable& table, Rng sample_rng)
{
    switch (algorithm) {
    case Algorithm::minstrel:
        return std::make_unique<MinstrelController>(config, timing, sample_rng);
    case Algorithm::tara:
        return std::make_unique<TaraController>(config, timing, sample_rng, table, true);
    case Algorithm::tara_noprediction:
        return std::make_unique<TaraController>(config, timing, sample_rng, table, false);
    case Algorithm::ideal:
        return std::make_unique<IdealController>(table, timing.retry_cap);
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace flyra
