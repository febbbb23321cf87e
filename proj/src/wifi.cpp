#include "flyra/wifi.hpp"

#include <stdexcept>

namespace flyra {

std::string to_string(Modulation m)
{
    switch (m) {
    case Modulation::bpsk:
        return "BPSK";
    case Modulation::qpsk:
        return "QPSK";
    case Modulation::qam16:
        return "16-QAM";
    case Modulation::qam64:
        return "64-QAM";
    }
    return "?";
}

namespace {

constexpr double kSymbolDurationS = 4e-6; // 20 MHz, long GI
constexpr int kDataSubcarriers = 52;

constexpr McsEntry make_mcs(int index, Modulation mod, int num, int den, int bps)
{
    return {index, mod, num, den, bps,
            kDataSubcarriers * bps * (static_cast<double>(num) / den) / kSymbolDurationS};
}

const std::array<McsEntry, kNumMcs> kMcsTable = {{
    make_mcs(0, Modulation::bpsk, 1, 2, 1),
    make_mcs(1, Modulation::qpsk, 1, 2, 2),
    make_mcs(2, Modulation::qpsk, 3, 4, 2),
    make_mcs(3, Modulation::qam16, 1, 2, 4),
    make_mcs(4, Modulation::qam16, 3, 4, 4),
    make_mcs(5, Modulation::qam64, 2, 3, 6),
    make_mcs(6, Modulation::qam64, 3, 4, 6),
    make_mcs(7, Modulation::qam64, 5, 6, 6),
}};

} // namespace

const std::array<McsEntry, kNumMcs>& mcs_table()
{
    return kMcsTable;
}

void MacTimingConfig::validate() const
{
    if (slot_us <= 0 || sifs_us <= 0 || difs_us <= 0 || phy_preamble_us <= 0 ||
        ack_duration_us <= 0) {
        throw std::invalid_argument("MAC timing durations must be > 0");
    }
    if (payload_bytes <= 0) {
        throw std::invalid_argument("payload_bytes must be > 0");
    }
    if (retry_cap < 1) {
        throw std::invalid_argument("retry_cap must be >= 1");
    }
}

double frame_airtime_s(const McsEntry& mcs, const MacTimingConfig& timing)
{
    const double data_us = timing.payload_bits() / mcs.phy_rate_bps * 1e6;
    const double total_us = timing.difs_us + timing.mean_backoff_slots * timing.slot_us +
                            timing.phy_preamble_us + data_us + timing.sifs_us +
                            timing.ack_duration_us;
    return total_us * 1e-6;
}

} // namespace flyra
