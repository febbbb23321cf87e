#include "flyra/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace flyra {

namespace {

constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Distance spectrum of the punctured K=7 convolutional code, per coding rate.
struct DistanceSpectrum {
    int puncturing_period;   // b in the 1/(2b) union-bound prefactor
    int first_distance;      // d_free
    std::vector<double> coefficients;
};

const DistanceSpectrum& spectrum_for(int num, int den)
{
    // Rate 1/2 coefficients are tabulated at even distances only (step 2).
    static const DistanceSpectrum half{
        1, 10, {36, 0, 211, 0, 1404, 0, 11633, 0, 77433, 0, 502690, 0, 3322763, 0, 21292910, 0, 136031737}};
    static const DistanceSpectrum two_thirds{
        2, 6, {3, 70, 285, 1276, 6160, 27128, 117019, 498860, 2103891, 8784123}};
    static const DistanceSpectrum three_quarters{
        3, 5, {42, 201, 1492, 10469, 62935, 379644, 2253373, 13073811, 75152755, 428005675}};
    static const DistanceSpectrum five_sixths{
        5, 4, {92, 528, 8694, 79453, 792114, 7375573, 67884974, 610875423, 5427275376.0, 47664215639.0}};

    if (num == 1 && den == 2) {
        return half;
    }
    if (num == 2 && den == 3) {
        return two_thirds;
    }
    if (num == 3 && den == 4) {
        return three_quarters;
    }
    if (num == 5 && den == 6) {
        return five_sixths;
    }
    throw std::invalid_argument("unsupported coding rate");
}

} // namespace

double RadioConfig::wavelength_m() const
{
    return kSpeedOfLight / carrier_frequency_hz;
}

void RadioConfig::validate() const
{
    if (carrier_frequency_hz <= 0.0) {
        throw std::invalid_argument("carrier_frequency_hz must be > 0");
    }
    if (bandwidth_hz <= 0.0) {
        throw std::invalid_argument("bandwidth_hz must be > 0");
    }
    if (noise_power_dbm >= tx_power_dbm) {
        throw std::invalid_argument("noise_power_dbm must be below tx_power_dbm");
    }
}

double fspl_db(double distance_m, double wavelength_m)
{
    if (distance_m <= 0.0) {
        throw std::invalid_argument("fspl: non-positive distance");
    }
    if (wavelength_m <= 0.0) {
        throw std::invalid_argument("fspl: non-positive wavelength");
    }
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / wavelength_m);
}

double snr_db(const RadioConfig& radio, double distance_m)
{
    return radio.tx_power_dbm + radio.tx_gain_dbi + radio.rx_gain_dbi - radio.noise_power_dbm -
           fspl_db(distance_m, radio.wavelength_m());
}

double uncoded_ber(Modulation modulation, double snr_linear)
{
    const double g = snr_linear;
    switch (modulation) {
    case Modulation::bpsk:
        return 0.5 * std::erfc(std::sqrt(g));
    case Modulation::qpsk:
        return 0.5 * std::erfc(std::sqrt(g / 2.0));
    case Modulation::qam16:
        return (3.0 / 8.0) * std::erfc(std::sqrt(g / 10.0));
    case Modulation::qam64:
        return (7.0 / 24.0) * std::erfc(std::sqrt(g / 42.0));
    }
    throw std::invalid_argument("unknown modulation");
}

double coded_ber(const McsEntry& mcs, double snr_linear)
{
    const double p = uncoded_ber(mcs.modulation, snr_linear);
    if (p <= 0.0) {
        return 0.0;
    }
    const DistanceSpectrum& spec = spectrum_for(mcs.coding_num, mcs.coding_den);
    const double d = std::sqrt(4.0 * p * (1.0 - p));
    double sum = 0.0;
    double dk = std::pow(d, spec.first_distance);
    for (double ak : spec.coefficients) {
        sum += ak * dk;
        dk *= d;
    }
    const double pe = sum / (2.0 * spec.puncturing_period);
    return std::min(pe, 1.0);
}

double frame_success_prob(const McsEntry& mcs, double snr_db, int payload_bits)
{
    if (payload_bits <= 0) {
        throw std::invalid_argument("payload_bits must be > 0");
    }
    const double ber = coded_ber(mcs, std::pow(10.0, snr_db / 10.0));
    return std::pow(1.0 - ber, payload_bits);
}

int ThresholdTable::mcs_for_snr(double snr_db) const
{
    for (int i = kNumMcs - 1; i >= 0; --i) {
        if (snr_db >= thresholds_db[static_cast<std::size_t>(i)]) {
            return i;
        }
    }
    return 0; // below every threshold: transmit at the most robust rate anyway
}

ThresholdTable build_threshold_table(double target_ber)
{
    if (target_ber <= 0.0 || target_ber >= 1.0) {
        throw std::invalid_argument("target_ber must lie in (0, 1)");
    }
    constexpr double kLoDb = -10.0;
    constexpr double kHiDb = 60.0;
    constexpr double kResolutionDb = 0.01;

    ThresholdTable table;
    table.target_ber = target_ber;
    for (const McsEntry& mcs : mcs_table()) {
        auto meets_target = [&](double snr) {
            return coded_ber(mcs, std::pow(10.0, snr / 10.0)) <= target_ber;
        };
        if (!meets_target(kHiDb)) {
            throw std::runtime_error("threshold out of range for MCS " + std::to_string(mcs.index));
        }
        double lo = kLoDb;
        double hi = kHiDb;
        while (hi - lo > kResolutionDb) {
            const double mid = 0.5 * (lo + hi);
            (meets_target(mid) ? hi : lo) = mid;
        }
        table.thresholds_db[static_cast<std::size_t>(mcs.index)] = hi;
    }
    return table;
}

} // namespace flyra
