#include "flyra/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace flyra {

Ccdf::Ccdf(std::vector<double> samples)
{
    if (samples.empty()) {
        throw std::invalid_argument("ccdf: empty sample set");
    }
    std::sort(samples.begin(), samples.end());
    n_ = samples.size();
    for (std::size_t i = 0; i < n_;) {
        std::size_t j = i;
        while (j < n_ && samples[j] == samples[i]) {
            ++j;
        }
        xs_.push_back(samples[i]);
        fs_.push_back(static_cast<double>(n_ - j) / static_cast<double>(n_));
        i = j;
    }
}

double Ccdf::value_at(double x) const
{
    // Number of samples strictly greater than x.
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.begin()) {
        return 1.0;
    }
    return fs_[static_cast<std::size_t>(std::distance(xs_.begin(), it)) - 1];
}

double Ccdf::percentile(double q) const
{
    if (q <= 0.0 || q >= 100.0) {
        throw std::invalid_argument("percentile: q must lie in (0, 100)");
    }
    const double p = q / 100.0;
    if (xs_.size() == 1 || p >= fs_.front()) {
        // Even the smallest value is not exceeded often enough: clamp to it.
        return xs_.front();
    }
    // F is strictly decreasing over the distinct points; find the last with F >= p.
    std::size_t i = 0;
    while (i + 1 < fs_.size() && fs_[i + 1] >= p) {
        ++i;
    }
    if (i + 1 == fs_.size()) {
        return xs_.back(); // p <= F(max) == 0 cannot happen for p > 0; defensive clamp
    }
    const double f0 = fs_[i];
    const double f1 = fs_[i + 1];
    return xs_[i] + (f0 - p) / (f0 - f1) * (xs_[i + 1] - xs_[i]);
}

std::pair<double, double> mean_ci99(const std::vector<double>& values)
{
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("mean_ci99: need at least 2 values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const boost::math::students_t dist(static_cast<double>(n - 1));
    const double t = boost::math::quantile(dist, 0.995);
    return {mean, t * sd / std::sqrt(static_cast<double>(n))};
}

double GainSummary::positive_fraction() const
{
    if (records.empty()) {
        return 0.0;
    }
    std::size_t positive = 0;
    for (const GainRecord& r : records) {
        if (r.gain_percent > 0.0) {
            ++positive;
        }
    }
    return static_cast<double>(positive) / static_cast<double>(records.size());
}

double GainSummary::mean_gain_percent() const
{
    if (records.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const GainRecord& r : records) {
        sum += r.gain_percent;
    }
    return sum / static_cast<double>(records.size());
}

GainSummary gains(const std::vector<SeedLinkMean>& candidate,
                  const std::vector<SeedLinkMean>& baseline)
{
    std::map<std::pair<std::uint64_t, std::string>, double> base;
    for (const SeedLinkMean& b : baseline) {
        base[{b.seed, b.link}] = b.mean_bps;
    }
    if (base.size() != candidate.size()) {
        throw std::invalid_argument("gains: candidate/baseline key sets differ in size");
    }
    GainSummary out;
    for (const SeedLinkMean& c : candidate) {
        auto it = base.find({c.seed, c.link});
        if (it == base.end()) {
            throw std::invalid_argument("gains: missing baseline for seed " +
                                        std::to_string(c.seed) + " link " + c.link);
        }
        if (it->second == 0.0) {
            ++out.excluded_zero_baseline;
            continue;
        }
        out.records.push_back({c.seed, c.link, 100.0 * (c.mean_bps - it->second) / it->second});
    }
    return out;
}

} // namespace flyra
