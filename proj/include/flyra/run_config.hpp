#pragma once

#include "flyra/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flyra {

/**
 * Batch run configuration, loadable from a plain-text key=value file with
 * CLI flag overrides. Defaults reproduce the reference setup: 802.11n
 * 20 MHz, Friis propagation, NIST error model, 20 dBm, 0 dBi antennas,
 * target BER 1e-6, tau 50 ms, delta 30 s, 1400-byte saturated UDP.
 */
struct RunConfig {
    ScenarioConfig scenario;
    SimConfig sim;
    double target_ber = 1e-6;
    std::vector<std::string> algorithms = {"minstrel", "tara", "ideal"};
    std::uint64_t seed_begin = 1;
    std::uint64_t seed_end = 100;
    std::string output_dir = "out";
    int jobs = 1;

    std::vector<std::uint64_t> seeds() const;
    std::vector<Algorithm> parsed_algorithms() const;
    void validate() const;

    /// Applies one key=value pair; throws std::invalid_argument naming the field on error.
    void set(const std::string& key, const std::string& value);
};

/// Parses a key=value config file ('#' starts a comment). Throws on unknown keys or bad values.
RunConfig load_run_config(std::istream& is);
RunConfig load_run_config_file(const std::string& path);

/// Serializes every key in a fixed order; load(save(c)) == c.
std::string save_run_config(const RunConfig& config);

/// Parses "A..B" or a single seed "A" into [begin, end].
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text);

} // namespace flyra
