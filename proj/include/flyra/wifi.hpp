#pragma once

#include <array>
#include <string>

namespace flyra {

enum class Modulation { bpsk, qpsk, qam16, qam64 };

std::string to_string(Modulation m);

/// One 802.11n HT MCS (single spatial stream, 20 MHz, long guard interval).
struct McsEntry {
    int index;             // 0..7
    Modulation modulation;
    int coding_num;        // coding rate numerator
    int coding_den;        // coding rate denominator
    int bits_per_subcarrier;
    double phy_rate_bps;   // 52 subcarriers * bits/subcarrier * rate / 4 us symbol
};

inline constexpr int kNumMcs = 8;

/// The fixed MCS0..MCS7 rate set (6.5 .. 65 Mb/s).
const std::array<McsEntry, kNumMcs>& mcs_table();

/// MAC/PHY timing used to convert rate decisions into airtime.
struct MacTimingConfig {
    double slot_us = 9.0;
    double sifs_us = 16.0;
    double difs_us = 34.0;
    double phy_preamble_us = 40.0;
    double ack_duration_us = 40.0;
    double mean_backoff_slots = 7.5; // CW_min/2; single transmitter per channel, so no contention
    int payload_bytes = 1400;
    int retry_cap = 10;              // attempts per frame before it is dropped

    int payload_bits() const { return payload_bytes * 8; }
    void validate() const; // throws std::invalid_argument on bad values
};

/**
 * Airtime of one transmission attempt in seconds:
 * DIFS + mean backoff + preamble + payload + SIFS + ACK.
 */
double frame_airtime_s(const McsEntry& mcs, const MacTimingConfig& timing);

} // namespace flyra
