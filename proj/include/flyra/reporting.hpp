#pragma once

#include "flyra/simulator.hpp"
#include "flyra/stats.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace flyra {

/// Per-run time series: time_s,link,delivered_bits,distance_m,first_stage_mcs.
void write_run_csv(std::ostream& os, const RunMetrics& metrics);

/// Batch summary: seed,algorithm,link,mean_throughput_bps,frames_delivered,frames_dropped,queue_drops.
void write_summary_csv(std::ostream& os, const std::vector<RunMetrics>& batch);

/// Controller decision trace: time_s,link,max_tp,max_tp2,max_prob,mcs_tara,first_stage_mcs.
void write_trace_csv(std::ostream& os, const std::vector<DecisionTraceRow>& rows);

std::string run_csv_filename(std::uint64_t seed, Algorithm algorithm);

/// One batch directory read back from summary.csv plus the per-run CSVs.
struct BatchData {
    struct SummaryRow {
        std::uint64_t seed;
        std::string algorithm;
        std::string link;
        double mean_throughput_bps;
        long frames_delivered;
        long frames_dropped;
        long queue_drops;
    };

    std::vector<SummaryRow> summary;
    /// Pooled per-second throughput samples keyed by (algorithm, link).
    std::map<std::pair<std::string, std::string>, std::vector<double>> samples;

    std::vector<std::string> algorithms() const;
    std::vector<SeedLinkMean> per_seed_means(const std::string& algorithm) const;
};

/// Loads a directory produced by the run command; throws naming any missing or corrupt file.
BatchData read_batch(const std::string& dir);

/// Statistics outputs of the analyze step.
struct AnalysisOutputs {
    std::string ccdf_csv;
    std::string percentiles_csv;
    std::string ci_csv;
    std::string gains_csv;
    std::string gain_summary_csv;
};

AnalysisOutputs analyze_batch(const BatchData& batch);

} // namespace flyra
