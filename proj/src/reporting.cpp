#include "flyra/reporting.hpp"

#include "flyra/csv.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flyra {

namespace {

void write_link_rows(std::ostream& os, const RunMetrics& metrics, LinkId id)
{
    const LinkMetrics& lm = metrics.link(id);
    const std::string link = to_string(id);
    for (std::size_t s = 0; s < lm.delivered_bits.size(); ++s) {
        os << s << ',' << link << ',' << csv::num(lm.delivered_bits[s]) << ','
           << csv::num(lm.distance_m[s]) << ',' << lm.first_stage_mcs[s] << '\n';
    }
}

} // namespace

void write_run_csv(std::ostream& os, const RunMetrics& metrics)
{
    os << "time_s,link,delivered_bits,distance_m,first_stage_mcs\n";
    write_link_rows(os, metrics, LinkId::access);
    write_link_rows(os, metrics, LinkId::relay);
}

void write_summary_csv(std::ostream& os, const std::vector<RunMetrics>& batch)
{
    os << "seed,algorithm,link,mean_throughput_bps,frames_delivered,frames_dropped,queue_drops\n";
    for (const RunMetrics& m : batch) {
        for (LinkId id : {LinkId::access, LinkId::relay}) {
            const LinkMetrics& lm = m.link(id);
            os << m.seed << ',' << to_string(m.algorithm) << ',' << to_string(id) << ','
               << csv::num(lm.mean_throughput_bps(m.duration_s)) << ',' << lm.frames_delivered
               << ',' << lm.frames_dropped << ',' << m.queue_drops << '\n';
        }
    }
}

void write_trace_csv(std::ostream& os, const std::vector<DecisionTraceRow>& rows)
{
    os << "time_s,link,max_tp,max_tp2,max_prob,mcs_tara,first_stage_mcs\n";
    for (const DecisionTraceRow& r : rows) {
        os << csv::num(r.time_s) << ',' << to_string(r.link) << ',' << r.max_tp << ',' << r.max_tp2
           << ',' << r.max_prob << ',' << r.mcs_tara << ',' << r.first_stage_mcs << '\n';
    }
}

std::string run_csv_filename(std::uint64_t seed, Algorithm algorithm)
{
    return "run_s" + std::to_string(seed) + "_" + to_string(algorithm) + ".csv";
}

std::vector<std::string> BatchData::algorithms() const
{
    std::vector<std::string> out;
    for (const SummaryRow& r : summary) {
        if (std::find(out.begin(), out.end(), r.algorithm) == out.end()) {
            out.push_back(r.algorithm);
        }
    }
    return out;
}

std::vector<SeedLinkMean> BatchData::per_seed_means(const std::string& algorithm) const
{
    std::vector<SeedLinkMean> out;
    for (const SummaryRow& r : summary) {
        if (r.algorithm == algorithm) {
            out.push_back({r.seed, r.link, r.mean_throughput_bps});
        }
    }
    return out;
}

BatchData read_batch(const std::string& dir)
{
    namespace fs = std::filesystem;
    const fs::path summary_path = fs::path(dir) / "summary.csv";
    std::ifstream summary(summary_path);
    if (!summary) {
        throw std::runtime_error("missing batch summary: " + summary_path.string());
    }

    BatchData batch;
    std::string line;
    if (!std::getline(summary, line)) {
        throw std::runtime_error("empty batch summary: " + summary_path.string());
    }
    while (std::getline(summary, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = csv::split(line);
        if (f.size() != 7) {
            throw std::runtime_error("corrupt summary row in " + summary_path.string() + ": '" +
                                     line + "'");
        }
        batch.summary.push_back({std::stoull(f[0]), f[1], f[2], std::stod(f[3]), std::stol(f[4]),
                                 std::stol(f[5]), std::stol(f[6])});
    }

    std::set<std::pair<std::uint64_t, std::string>> runs;
    for (const auto& r : batch.summary) {
        runs.insert({r.seed, r.algorithm});
    }
    for (const auto& [seed, algorithm] : runs) {
        const fs::path run_path =
            fs::path(dir) / run_csv_filename(seed, algorithm_from_name(algorithm));
        std::ifstream run(run_path);
        if (!run) {
            throw std::runtime_error("missing run file: " + run_path.string());
        }
        if (!std::getline(run, line)) {
            throw std::runtime_error("empty run file: " + run_path.string());
        }
        while (std::getline(run, line)) {
            if (line.empty()) {
                continue;
            }
            const auto f = csv::split(line);
            if (f.size() != 5) {
                throw std::runtime_error("corrupt row in " + run_path.string() + ": '" + line + "'");
            }
            // Delivered bits within one second are the per-second throughput sample in bps.
            batch.samples[{algorithm, f[1]}].push_back(std::stod(f[2]));
        }
    }
    return batch;
}

AnalysisOutputs analyze_batch(const BatchData& batch)
{
    AnalysisOutputs out;
    std::ostringstream ccdf_os;
    std::ostringstream pct_os;
    std::ostringstream ci_os;
    std::ostringstream gains_os;
    std::ostringstream gsum_os;

    ccdf_os << "algorithm,link,value_bps,ccdf\n";
    for (const auto& [key, samples] : batch.samples) {
        const Ccdf c{samples};
        for (std::size_t i = 0; i < c.points().size(); ++i) {
            ccdf_os << key.first << ',' << key.second << ',' << csv::num(c.points()[i]) << ','
                    << csv::num(c.probabilities()[i]) << '\n';
        }
    }

    pct_os << "algorithm,link,percentile,value_bps\n";
    for (const auto& [key, samples] : batch.samples) {
        const Ccdf c{samples};
        for (double q : {30.0, 50.0, 70.0}) {
            pct_os << key.first << ',' << key.second << ',' << csv::num(q) << ','
                   << csv::num(c.percentile(q)) << '\n';
        }
    }

    ci_os << "algorithm,link,mean_bps,ci99_half_width_bps\n";
    for (const std::string& algorithm : batch.algorithms()) {
        for (const std::string& link : {std::string("access"), std::string("relay")}) {
            std::vector<double> means;
            for (const auto& m : batch.per_seed_means(algorithm)) {
                if (m.link == link) {
                    means.push_back(m.mean_bps);
                }
            }
            if (means.size() < 2) {
                continue;
            }
            const auto [mean, half] = mean_ci99(means);
            ci_os << algorithm << ',' << link << ',' << csv::num(mean) << ',' << csv::num(half)
                  << '\n';
        }
    }

    gains_os << "baseline,link,seed,gain_percent\n";
    gsum_os << "baseline,link,count,positive_fraction,mean_gain_percent,excluded_zero_baseline\n";
    const auto algorithms = batch.algorithms();
    const bool has_tara = std::find(algorithms.begin(), algorithms.end(), "tara") != algorithms.end();
    if (has_tara) {
        const auto tara_means = batch.per_seed_means("tara");
        for (const std::string& baseline : algorithms) {
            if (baseline == "tara") {
                continue;
            }
            const GainSummary summary = gains(tara_means, batch.per_seed_means(baseline));
            for (const std::string& link : {std::string("access"), std::string("relay")}) {
                std::size_t count = 0;
                std::size_t positive = 0;
                double sum = 0.0;
                for (const GainRecord& r : summary.records) {
                    if (r.link != link) {
                        continue;
                    }
                    gains_os << baseline << ',' << link << ',' << r.seed << ','
                             << csv::num(r.gain_percent) << '\n';
                    ++count;
                    positive += r.gain_percent > 0.0 ? 1 : 0;
                    sum += r.gain_percent;
                }
                if (count > 0) {
                    gsum_os << baseline << ',' << link << ',' << count << ','
                            << csv::num(static_cast<double>(positive) / static_cast<double>(count))
                            << ',' << csv::num(sum / static_cast<double>(count)) << ','
                            << summary.excluded_zero_baseline << '\n';
                }
            }
        }
    }

    out.ccdf_csv = ccdf_os.str();
    out.percentiles_csv = pct_os.str();
    out.ci_csv = ci_os.str();
    out.gains_csv = gains_os.str();
    out.gain_summary_csv = gsum_os.str();
    return out;
}

} // namespace flyra
