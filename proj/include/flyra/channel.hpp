#pragma once

#include "flyra/wifi.hpp"

#include <array>

namespace flyra {

/// Per-link radio parameters; SNR is computed in the dB domain from these.
struct RadioConfig {
    double tx_power_dbm = 20.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;
    // Thermal noise over 20 MHz plus a 7 dB receiver noise figure.
    double noise_power_dbm = -94.0;
    double carrier_frequency_hz = 5.18e9;
    double bandwidth_hz = 20e6;

    double wavelength_m() const;
    void validate() const; // throws std::invalid_argument on bad values
};

/// Free-space path loss 20*log10(4*pi*d/lambda); throws on non-positive distance.
double fspl_db(double distance_m, double wavelength_m);

/// Link budget: P_t + G_t + G_r - P_n - FSPL(d), all in dB.
double snr_db(const RadioConfig& radio, double distance_m);

/**
 * Uncoded bit error ratio of one OFDM subcarrier modulation at linear SNR,
 * per the NIST OFDM error model:
 *   BPSK   erfc(sqrt(g))/2
 *   QPSK   erfc(sqrt(g/2))/2
 *   16-QAM erfc(sqrt(g/10))*3/8
 *   64-QAM erfc(sqrt(g/42))*7/24
 */
double uncoded_ber(Modulation modulation, double snr_linear);

/**
 * Coded BER from the first-event union bound of the K=7 convolutional code
 * punctured to the MCS coding rate, over the uncoded BER; clamped to [0, 1].
 */
double coded_ber(const McsEntry& mcs, double snr_linear);

/// Frame success probability (1 - coded_ber)^payload_bits.
double frame_success_prob(const McsEntry& mcs, double snr_db, int payload_bits);

/**
 * Per-MCS minimum SNR achieving a target coded BER. Thresholds are strictly
 * increasing with MCS index; lookup picks the highest MCS whose threshold is
 * satisfied, falling back to MCS 0 below the first threshold.
 */
struct ThresholdTable {
    double target_ber = 0.0;
    std::array<double, kNumMcs> thresholds_db{};

    int mcs_for_snr(double snr_db) const;
};

/**
 * Builds the (MCS, target_ber) -> SNR threshold lookup by bisection over
 * [-10, 60] dB to 0.01 dB resolution. Throws std::invalid_argument for a
 * target outside (0, 1) and std::runtime_error if a threshold does not lie
 * in the search range.
 */
ThresholdTable build_threshold_table(double target_ber);

} // namespace flyra
