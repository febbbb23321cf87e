// flyra: flying-network rate adaptation simulator.
//
// Subcommands:
//   thresholds     dump the (MCS, BER) -> SNR threshold table as CSV
//   run            simulate a seed sweep and write per-run + summary CSVs
//   analyze        compute CCDFs, percentiles, CIs and gains from a batch
//   scenario-dump  export the generated trajectories of one seed as CSV

#include "flyra/channel.hpp"
#include "flyra/csv.hpp"
#include "flyra/reporting.hpp"
#include "flyra/run_config.hpp"
#include "flyra/scenario.hpp"
#include "flyra/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

namespace fs = std::filesystem;

std::string default_output_dir()
{
    const char* env = std::getenv("FLYRA_OUT");
    return env != nullptr ? env : "out";
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << content;
}

std::string thresholds_csv(const flyra::ThresholdTable& table)
{
    std::ostringstream os;
    os << "mcs,modulation,coding_rate,phy_rate_bps,snr_threshold_db\n";
    for (const flyra::McsEntry& mcs : flyra::mcs_table()) {
        os << mcs.index << ',' << flyra::to_string(mcs.modulation) << ',' << mcs.coding_num << '/'
           << mcs.coding_den << ',' << flyra::csv::num(mcs.phy_rate_bps) << ','
           << flyra::csv::num(table.thresholds_db[static_cast<std::size_t>(mcs.index)]) << '\n';
    }
    return os.str();
}

struct CommonOpts {
    std::string config_file;
    std::string seeds_text;
    std::vector<std::string> algorithms;
    double duration = -1.0;
    std::string out_dir;
    int jobs = 0;
};

flyra::RunConfig resolve_config(const CommonOpts& opts)
{
    flyra::RunConfig config;
    config.output_dir = default_output_dir();
    if (!opts.config_file.empty()) {
        const std::string saved_out = config.output_dir;
        config = flyra::load_run_config_file(opts.config_file);
        if (config.output_dir == "out") {
            config.output_dir = saved_out;
        }
    }
    if (!opts.seeds_text.empty()) {
        const auto range = flyra::parse_seed_range(opts.seeds_text);
        config.seed_begin = range.first;
        config.seed_end = range.second;
    }
    if (!opts.algorithms.empty()) {
        config.algorithms = opts.algorithms;
    }
    if (opts.duration > 0.0) {
        config.scenario.run_duration = opts.duration;
    }
    if (!opts.out_dir.empty()) {
        config.output_dir = opts.out_dir;
    }
    if (opts.jobs > 0) {
        config.jobs = opts.jobs;
    }
    config.validate();
    return config;
}

int cmd_thresholds(const flyra::RunConfig& config, const std::string& out_file)
{
    const flyra::ThresholdTable table = flyra::build_threshold_table(config.target_ber);
    const std::string csv = thresholds_csv(table);
    if (out_file.empty() || out_file == "-") {
        std::cout << csv;
    } else {
        write_file(out_file, csv);
    }
    return kExitOk;
}

int cmd_scenario_dump(const flyra::RunConfig& config, const std::string& out_file)
{
    flyra::ScenarioConfig sc = config.scenario;
    sc.seed = config.seed_begin;
    const flyra::Scenario scenario = flyra::make_scenario(sc);
    const std::string csv = flyra::scenario_csv(scenario);
    if (out_file.empty() || out_file == "-") {
        std::cout << csv;
    } else {
        write_file(out_file, csv);
    }
    return kExitOk;
}

int cmd_run(const flyra::RunConfig& config)
{
    const flyra::ThresholdTable table = flyra::build_threshold_table(config.target_ber);
    const auto algorithms = config.parsed_algorithms();
    const auto seeds = config.seeds();

    fs::create_directories(config.output_dir);
    const auto batch =
        flyra::run_batch(config.scenario, algorithms, seeds, config.sim, table, config.jobs);

    for (const flyra::RunMetrics& m : batch) {
        std::ostringstream os;
        flyra::write_run_csv(os, m);
        write_file(fs::path(config.output_dir) / flyra::run_csv_filename(m.seed, m.algorithm),
                   os.str());
    }
    std::ostringstream summary;
    flyra::write_summary_csv(summary, batch);
    write_file(fs::path(config.output_dir) / "summary.csv", summary.str());

    // Per-algorithm relay means and TARA gains on standard output.
    const flyra::BatchData data = flyra::read_batch(config.output_dir);
    for (const std::string& algorithm : data.algorithms()) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& m : data.per_seed_means(algorithm)) {
            if (m.link == "relay") {
                sum += m.mean_bps;
                ++n;
            }
        }
        if (n > 0) {
            std::cout << algorithm << ": relay mean throughput "
                      << flyra::csv::num(sum / static_cast<double>(n) / 1e6) << " Mb/s over " << n
                      << " seeds\n";
        }
    }
    const auto algo_names = data.algorithms();
    if (std::find(algo_names.begin(), algo_names.end(), "tara") != algo_names.end()) {
        for (const std::string& baseline : algo_names) {
            if (baseline == "tara") {
                continue;
            }
            std::vector<flyra::SeedLinkMean> tara_relay;
            std::vector<flyra::SeedLinkMean> base_relay;
            for (const auto& m : data.per_seed_means("tara")) {
                if (m.link == "relay") {
                    tara_relay.push_back(m);
                }
            }
            for (const auto& m : data.per_seed_means(baseline)) {
                if (m.link == "relay") {
                    base_relay.push_back(m);
                }
            }
            const flyra::GainSummary g = flyra::gains(tara_relay, base_relay);
            std::cout << "tara vs " << baseline << " (relay): mean gain "
                      << flyra::csv::num(g.mean_gain_percent()) << "%, positive in "
                      << flyra::csv::num(g.positive_fraction() * 100.0) << "% of seeds\n";
        }
    }
    return kExitOk;
}

int cmd_analyze(const std::string& batch_dir, const std::string& out_dir)
{
    const flyra::BatchData batch = flyra::read_batch(batch_dir);
    const flyra::AnalysisOutputs outputs = flyra::analyze_batch(batch);
    const fs::path dir = out_dir.empty() ? fs::path(batch_dir) : fs::path(out_dir);
    fs::create_directories(dir);
    write_file(dir / "ccdf.csv", outputs.ccdf_csv);
    write_file(dir / "percentiles.csv", outputs.percentiles_csv);
    write_file(dir / "ci.csv", outputs.ci_csv);
    write_file(dir / "gains.csv", outputs.gains_csv);
    write_file(dir / "gain_summary.csv", outputs.gain_summary_csv);
    std::cout << "wrote ccdf.csv, percentiles.csv, ci.csv, gains.csv, gain_summary.csv to "
              << dir.string() << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"flyra: trajectory-aware rate adaptation simulator for flying networks"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string out_file;
    std::string batch_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_file, "key=value configuration file");
        cmd->add_option("--seeds", opts.seeds_text, "seed or seed range A..B");
        cmd->add_option("--algorithms", opts.algorithms, "algorithms (minstrel, tara, ideal)")
            ->delimiter(',');
        cmd->add_option("--duration", opts.duration, "run duration in seconds");
        cmd->add_option("--out", opts.out_dir, "output directory (default $FLYRA_OUT or ./out)");
        cmd->add_option("--jobs", opts.jobs, "parallel seed workers");
    };

    CLI::App* thresholds = app.add_subcommand("thresholds", "dump the SNR threshold table");
    thresholds->add_option("--config", opts.config_file, "key=value configuration file");
    thresholds->add_option("--file", out_file, "output file ('-' for stdout)");

    CLI::App* run = app.add_subcommand("run", "simulate a seed sweep");
    add_common(run);

    CLI::App* analyze = app.add_subcommand("analyze", "compute statistics from a batch directory");
    analyze->add_option("--batch", batch_dir, "directory written by run")->required();
    analyze->add_option("--out", opts.out_dir, "output directory (default: batch directory)");

    CLI::App* dump = app.add_subcommand("scenario-dump", "export one seed's trajectories as CSV");
    dump->add_option("--config", opts.config_file, "key=value configuration file");
    dump->add_option("--seed", opts.seeds_text, "scenario seed");
    dump->add_option("--file", out_file, "output file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (thresholds->parsed()) {
            return cmd_thresholds(resolve_config(opts), out_file);
        }
        if (run->parsed()) {
            return cmd_run(resolve_config(opts));
        }
        if (analyze->parsed()) {
            return cmd_analyze(batch_dir, opts.out_dir);
        }
        if (dump->parsed()) {
            return cmd_scenario_dump(resolve_config(opts), out_file);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitOk;
}
