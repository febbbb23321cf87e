#include "flyra/stats.hpp"

#include "flyra/reporting.hpp"
#include "flyra/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using namespace flyra;

namespace {

/// Brute-force oracle: the largest sample value whose strictly-greater
/// fraction is at least q percent.
double percentile_oracle(std::vector<double> samples, double q)
{
    std::sort(samples.begin(), samples.end());
    double best = samples.front();
    for (double x : samples) {
        const double above = static_cast<double>(
            std::count_if(samples.begin(), samples.end(), [&](double v) { return v > x; }));
        if (above / static_cast<double>(samples.size()) >= q / 100.0) {
            best = std::max(best, x);
        }
    }
    return best;
}

} // namespace

TEST_CASE("ccdf counts the fraction strictly above a value")
{
    const Ccdf c({1, 2, 3, 4});
    CHECK(c.value_at(2.5) == doctest::Approx(0.5));
    CHECK(c.value_at(0.0) == doctest::Approx(1.0));
    CHECK(c.value_at(4.0) == doctest::Approx(0.0));

    const Ccdf equal({7, 7, 7});
    CHECK(equal.value_at(7.0) == doctest::Approx(0.0));
    CHECK(equal.value_at(6.999) == doctest::Approx(1.0));

    CHECK_THROWS_AS(Ccdf(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ccdf percentile on uniform samples")
{
    std::vector<double> samples(100);
    std::iota(samples.begin(), samples.end(), 1.0); // 1..100
    const Ccdf c(samples);
    CHECK(c.percentile(70.0) == doctest::Approx(percentile_oracle(samples, 70.0)));
    CHECK(c.percentile(70.0) == doctest::Approx(30.0));
    CHECK(c.percentile(30.0) == doctest::Approx(70.0));
}

TEST_CASE("ccdf percentile approximates the median on symmetric samples")
{
    std::vector<double> samples(1001);
    std::iota(samples.begin(), samples.end(), 0.0); // 0..1000, median 500
    const Ccdf c(samples);
    CHECK(c.percentile(50.0) == doctest::Approx(500.0).epsilon(0.005));
}

TEST_CASE("ccdf percentile limits")
{
    const Ccdf c({10, 20, 30, 40});
    CHECK(c.percentile(0.0001) == doctest::Approx(40.0).epsilon(1e-3));
    CHECK(c.percentile(99.9999) == doctest::Approx(10.0));
    CHECK(Ccdf({42.0}).percentile(50.0) == doctest::Approx(42.0));
    CHECK_THROWS_AS(c.percentile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(c.percentile(100.0), std::invalid_argument);
}

TEST_CASE("ccdf percentile is monotone non-increasing in q")
{
    Rng rng(5);
    std::vector<double> samples;
    for (int i = 0; i < 500; ++i) {
        samples.push_back(rng.uniform(0.0, 50.0));
    }
    const Ccdf c(samples);
    double prev = c.percentile(0.5);
    for (double q = 1.0; q < 100.0; q += 0.5) {
        const double v = c.percentile(q);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("statistics are invariant under input permutation")
{
    std::vector<double> samples = {5, 1, 9, 3, 3, 7, 2, 8};
    std::vector<double> shuffled = samples;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(7));
    const Ccdf a(samples);
    const Ccdf b(shuffled);
    CHECK(a.percentile(30.0) == doctest::Approx(b.percentile(30.0)));
    CHECK(a.value_at(4.0) == doctest::Approx(b.value_at(4.0)));
    CHECK(mean_ci99(samples).first == doctest::Approx(mean_ci99(shuffled).first));
    CHECK(mean_ci99(samples).second == doctest::Approx(mean_ci99(shuffled).second));
}

TEST_CASE("mean with 99% confidence half-width")
{
    const auto constant = mean_ci99({4.2, 4.2, 4.2, 4.2});
    CHECK(constant.first == doctest::Approx(4.2));
    CHECK(constant.second == doctest::Approx(0.0));

    // t(0.995, 1 dof) = 63.6567, sd = 7.0711: half-width 318.2837.
    const auto two = mean_ci99({0.0, 10.0});
    CHECK(two.first == doctest::Approx(5.0));
    CHECK(two.second == doctest::Approx(318.28370581437).epsilon(1e-6));

    CHECK_THROWS_AS(mean_ci99({1.0}), std::invalid_argument);
}

TEST_CASE("confidence width shrinks roughly as one over sqrt n")
{
    auto alternating = [](std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = (i % 2 == 0) ? 0.0 : 10.0;
        }
        return mean_ci99(v).second;
    };
    const double ratio = alternating(50) / alternating(200);
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.2);
}

TEST_CASE("per-seed gain records")
{
    const std::vector<SeedLinkMean> tara = {{1, "relay", 20e6}, {2, "relay", 15e6},
                                            {3, "relay", 18e6}};
    const std::vector<SeedLinkMean> base = {{1, "relay", 17.5e6}, {2, "relay", 20e6},
                                            {3, "relay", 18e6}};
    const GainSummary g = gains(tara, base);
    REQUIRE(g.records.size() == 3);
    CHECK(g.records[0].gain_percent == doctest::Approx(100.0 * 2.5 / 17.5));
    CHECK(g.records[1].gain_percent == doctest::Approx(-25.0));
    CHECK(g.records[2].gain_percent == doctest::Approx(0.0));
    CHECK(g.positive_fraction() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("gains of a batch against itself vanish")
{
    std::vector<SeedLinkMean> means;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        means.push_back({seed, "access", static_cast<double>(seed) * 1e6});
        means.push_back({seed, "relay", static_cast<double>(seed) * 9e5});
    }
    const GainSummary g = gains(means, means);
    for (const GainRecord& r : g.records) {
        CHECK(r.gain_percent == doctest::Approx(0.0));
    }
    CHECK(g.positive_fraction() == doctest::Approx(0.0));
}

TEST_CASE("zero baselines are excluded and counted")
{
    const std::vector<SeedLinkMean> tara = {{1, "relay", 5e6}, {2, "relay", 6e6}};
    const std::vector<SeedLinkMean> base = {{1, "relay", 0.0}, {2, "relay", 3e6}};
    const GainSummary g = gains(tara, base);
    CHECK(g.records.size() == 1);
    CHECK(g.excluded_zero_baseline == 1);
    CHECK(g.records[0].gain_percent == doctest::Approx(100.0));
}

TEST_CASE("gains require matching key sets")
{
    const std::vector<SeedLinkMean> tara = {{1, "relay", 5e6}};
    const std::vector<SeedLinkMean> base = {{2, "relay", 5e6}};
    CHECK_THROWS_AS(gains(tara, base), std::invalid_argument);
    const std::vector<SeedLinkMean> fewer = {};
    CHECK_THROWS_AS(gains(tara, fewer), std::invalid_argument);
}

TEST_CASE("analysis of a batch where tara equals the baseline yields zero gains")
{
    BatchData batch;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        for (const char* alg : {"minstrel", "tara"}) {
            batch.summary.push_back({seed, alg, "access", 12e6, 100, 0, 0});
            batch.summary.push_back({seed, alg, "relay", 11e6, 90, 0, 0});
        }
    }
    batch.samples[{"minstrel", "access"}] = {1, 2, 3};
    batch.samples[{"minstrel", "relay"}] = {1, 2, 3};
    batch.samples[{"tara", "access"}] = {1, 2, 3};
    batch.samples[{"tara", "relay"}] = {1, 2, 3};

    const AnalysisOutputs out = analyze_batch(batch);
    std::istringstream gains_csv(out.gains_csv);
    std::string line;
    std::getline(gains_csv, line); // header
    int rows = 0;
    while (std::getline(gains_csv, line)) {
        CHECK(line.substr(line.rfind(',') + 1) == "0");
        ++rows;
    }
    CHECK(rows == 8); // 4 seeds x 2 links x 1 baseline
}
