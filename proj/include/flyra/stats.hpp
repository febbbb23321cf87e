#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace flyra {

/**
 * Complementary CDF of a sample set: F(x) is the fraction of samples
 * strictly greater than x.
 */
class Ccdf {
public:
    explicit Ccdf(std::vector<double> samples); // throws std::invalid_argument on empty input

    /// F(x) for arbitrary x (right-continuous step function).
    double value_at(double x) const;

    /**
     * The largest x with F(x) >= q/100, i.e. the value exceeded q percent of
     * the time, linearly interpolated between adjacent sample points and
     * clamped to the sample range. q must lie in (0, 100).
     */
    double percentile(double q) const;

    std::size_t sample_count() const { return n_; }
    const std::vector<double>& points() const { return xs_; }       // distinct sorted values
    const std::vector<double>& probabilities() const { return fs_; } // F at each point

private:
    std::vector<double> xs_;
    std::vector<double> fs_;
    std::size_t n_ = 0;
};

/// Sample mean and 99% confidence half-width (Student t, n-1 dof). Requires n >= 2.
std::pair<double, double> mean_ci99(const std::vector<double>& values);

/// Per-seed mean throughput of one link, the unit of the gain analysis.
struct SeedLinkMean {
    std::uint64_t seed = 0;
    std::string link;
    double mean_bps = 0.0;
};

struct GainRecord {
    std::uint64_t seed = 0;
    std::string link;
    double gain_percent = 0.0; // 100 * (candidate - baseline) / baseline
};

struct GainSummary {
    std::vector<GainRecord> records;
    std::size_t excluded_zero_baseline = 0;

    double positive_fraction() const;
    double mean_gain_percent() const;
};

/**
 * Per-seed percentage gains of `candidate` over `baseline`. Both inputs must
 * cover the identical (seed, link) key set; zero-baseline entries are
 * excluded and counted separately.
 */
GainSummary gains(const std::vector<SeedLinkMean>& candidate,
                  const std::vector<SeedLinkMean>& baseline);

} // namespace flyra
