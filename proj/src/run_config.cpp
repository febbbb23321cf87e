#include "flyra/run_config.hpp"

#include "flyra/csv.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flyra {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config field '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size()) {
        throw std::invalid_argument("config field '" + key + "': trailing characters in '" + value + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value)
{
    try {
        if (!value.empty() && value[0] == '-') {
            throw std::invalid_argument("negative");
        }
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config field '" + key + "': not an unsigned integer: '" +
                                    value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config field '" + key + "': not an integer: '" + value + "'");
    }
}

std::vector<std::string> parse_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += items[i];
    }
    return out;
}

} // namespace

std::vector<std::uint64_t> RunConfig::seeds() const
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = seed_begin; s <= seed_end; ++s) {
        out.push_back(s);
    }
    return out;
}

std::vector<Algorithm> RunConfig::parsed_algorithms() const
{
    std::vector<Algorithm> out;
    out.reserve(algorithms.size());
    for (const std::string& name : algorithms) {
        out.push_back(algorithm_from_name(name));
    }
    return out;
}

void RunConfig::validate() const
{
    scenario.validate();
    sim.timing.validate();
    sim.access_radio.validate();
    sim.relay_radio.validate();
    if (target_ber <= 0.0 || target_ber >= 1.0) {
        throw std::invalid_argument("config field 'target_ber': must lie in (0, 1)");
    }
    if (sim.tau_s <= 0.0) {
        throw std::invalid_argument("config field 'tau_ms': must be > 0");
    }
    if (seed_begin > seed_end) {
        throw std::invalid_argument("config field 'seeds': begin > end");
    }
    if (algorithms.empty()) {
        throw std::invalid_argument("config field 'algorithms': empty list");
    }
    parsed_algorithms(); // throws on unknown names
    if (jobs < 1) {
        throw std::invalid_argument("config field 'jobs': must be >= 1");
    }
}

void RunConfig::set(const std::string& key, const std::string& value)
{
    if (key == "arena_side") {
        scenario.arena_side = parse_double(key, value);
    } else if (key == "run_duration") {
        scenario.run_duration = parse_double(key, value);
    } else if (key == "delta") {
        scenario.delta = parse_double(key, value);
    } else if (key == "fen_speed") {
        scenario.fen_speed = parse_double(key, value);
    } else if (key == "altitude") {
        scenario.altitude = parse_double(key, value);
    } else if (key == "tau_ms") {
        sim.tau_s = parse_double(key, value) * 1e-3;
    } else if (key == "target_ber") {
        target_ber = parse_double(key, value);
    } else if (key == "tx_power_dbm") {
        sim.access_radio.tx_power_dbm = parse_double(key, value);
        sim.relay_radio.tx_power_dbm = sim.access_radio.tx_power_dbm;
    } else if (key == "tx_gain_dbi") {
        sim.access_radio.tx_gain_dbi = parse_double(key, value);
        sim.relay_radio.tx_gain_dbi = sim.access_radio.tx_gain_dbi;
    } else if (key == "rx_gain_dbi") {
        sim.access_radio.rx_gain_dbi = parse_double(key, value);
        sim.relay_radio.rx_gain_dbi = sim.access_radio.rx_gain_dbi;
    } else if (key == "noise_power_dbm") {
        sim.access_radio.noise_power_dbm = parse_double(key, value);
        sim.relay_radio.noise_power_dbm = sim.access_radio.noise_power_dbm;
    } else if (key == "access_frequency_hz") {
        sim.access_radio.carrier_frequency_hz = parse_double(key, value);
    } else if (key == "relay_frequency_hz") {
        sim.relay_radio.carrier_frequency_hz = parse_double(key, value);
    } else if (key == "payload_bytes") {
        sim.timing.payload_bytes = parse_int(key, value);
    } else if (key == "retry_cap") {
        sim.timing.retry_cap = parse_int(key, value);
    } else if (key == "ack_duration_us") {
        sim.timing.ack_duration_us = parse_double(key, value);
    } else if (key == "queue_capacity") {
        sim.queue_capacity = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "ewma_weight") {
        sim.minstrel.ewma_weight = parse_double(key, value);
    } else if (key == "sample_period_frames") {
        sim.minstrel.sample_period_frames = parse_int(key, value);
    } else if (key == "algorithms") {
        algorithms = parse_list(value);
    } else if (key == "seeds") {
        const auto range = parse_seed_range(value);
        seed_begin = range.first;
        seed_end = range.second;
    } else if (key == "output_dir") {
        output_dir = value;
    } else if (key == "jobs") {
        jobs = parse_int(key, value);
    } else {
        throw std::invalid_argument("unknown config field '" + key + "'");
    }
}

RunConfig load_run_config(std::istream& is)
{
    RunConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        }
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

RunConfig load_run_config_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    return load_run_config(is);
}

std::string save_run_config(const RunConfig& c)
{
    std::ostringstream os;
    os << "arena_side = " << csv::num(c.scenario.arena_side) << '\n'
       << "run_duration = " << csv::num(c.scenario.run_duration) << '\n'
       << "delta = " << csv::num(c.scenario.delta) << '\n'
       << "fen_speed = " << csv::num(c.scenario.fen_speed) << '\n'
       << "altitude = " << csv::num(c.scenario.altitude) << '\n'
       << "tau_ms = " << csv::num(c.sim.tau_s * 1e3) << '\n'
       << "target_ber = " << csv::num(c.target_ber) << '\n'
       << "tx_power_dbm = " << csv::num(c.sim.access_radio.tx_power_dbm) << '\n'
       << "tx_gain_dbi = " << csv::num(c.sim.access_radio.tx_gain_dbi) << '\n'
       << "rx_gain_dbi = " << csv::num(c.sim.access_radio.rx_gain_dbi) << '\n'
       << "noise_power_dbm = " << csv::num(c.sim.access_radio.noise_power_dbm) << '\n'
       << "access_frequency_hz = " << csv::num(c.sim.access_radio.carrier_frequency_hz) << '\n'
       << "relay_frequency_hz = " << csv::num(c.sim.relay_radio.carrier_frequency_hz) << '\n'
       << "payload_bytes = " << c.sim.timing.payload_bytes << '\n'
       << "retry_cap = " << c.sim.timing.retry_cap << '\n'
       << "ack_duration_us = " << csv::num(c.sim.timing.ack_duration_us) << '\n'
       << "queue_capacity = " << c.sim.queue_capacity << '\n'
       << "ewma_weight = " << csv::num(c.sim.minstrel.ewma_weight) << '\n'
       << "sample_period_frames = " << c.sim.minstrel.sample_period_frames << '\n'
       << "algorithms = " << join(c.algorithms) << '\n'
       << "seeds = " << c.seed_begin << ".." << c.seed_end << '\n'
       << "output_dir = " << c.output_dir << '\n'
       << "jobs = " << c.jobs << '\n';
    return os.str();
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::uint64_t s = parse_u64("seeds", trim(text));
        return {s, s};
    }
    const std::uint64_t a = parse_u64("seeds", trim(text.substr(0, dots)));
    const std::uint64_t b = parse_u64("seeds", trim(text.substr(dots + 2)));
    return {a, b};
}

} // namespace flyra
