#include "tracksar/adc_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tracksar {

CapArray make_cap_array(const AdcConfig& config, std::mt19937_64& rng) {
    if (config.bits < 4 || config.bits > 16) {
        throw std::invalid_argument("adc: bits must be in [4, 16]");
    }
    if (!(config.vref > 0.0) || !std::isfinite(config.vref)) {
        throw std::invalid_argument("adc: vref must be positive and finite");
    }
    if (!(config.unit_cap > 0.0) || !std::isfinite(config.unit_cap)) {
        throw std::invalid_argument("adc: unit_cap must be positive and finite");
    }
    if (config.cap_mismatch_sigma < 0.0 ||
        !std::isfinite(config.cap_mismatch_sigma)) {
        throw std::invalid_argument("adc: cap_mismatch_sigma must be >= 0");
    }
    CapArray arr;
    arr.bits = config.bits;
    arr.vref = config.vref;
    arr.caps.resize(config.bits);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sigma = config.cap_mismatch_sigma;
    for (int i = 0; i < config.bits; ++i) {
        double weight = static_cast<double>(1 << i);
        double eps = 0.0;
        if (sigma > 0.0) {
            // Bit i is 2^i unit caps in parallel; its relative spread shrinks
            // with the square root of the count.
            eps = gauss(rng) * sigma / std::sqrt(weight);
        }
        arr.caps[i] = weight * config.unit_cap * (1.0 + eps);
    }
    double dummy_eps = sigma > 0.0 ? gauss(rng) * sigma : 0.0;
    arr.dummy_cap = config.unit_cap * (1.0 + dummy_eps);
    arr.total_cap = arr.dummy_cap;
    for (double c : arr.caps) arr.total_cap += c;
    return arr;
}

void sample_input(CapArray& arr, double vin) {
    if (!std::isfinite(vin)) {
        throw std::invalid_argument("adc: sampled input must be finite");
    }
    arr.input_clamped = vin < 0.0 || vin > arr.vref;
    arr.held_input = vin < 0.0 ? 0.0 : (vin > arr.vref ? arr.vref : vin);
}

double dac_voltage(const CapArray& arr, int code) {
    if (code < 0 || code >= (1 << arr.bits)) {
        throw std::invalid_argument("adc: code " + std::to_string(code) +
                                    " outside [0, 2^bits)");
    }
    double selected = 0.0;
    for (int i = 0; i < arr.bits; ++i) {
        if (code & (1 << i)) selected += arr.caps[i];
    }
    return arr.vref * selected / arr.total_cap;
}

bool Comparator::operator()(double vin_held, double vdac) const {
    double noisy = vin_held;
    if (noise_sigma > 0.0) {
        if (rng == nullptr) {
            throw std::invalid_argument("adc: noisy comparator needs an rng");
        }
        std::normal_distribution<double> gauss(0.0, noise_sigma);
        noisy += gauss(*rng);
    }
    return noisy > vdac + offset;
}

bool compare(double vin_held, double vdac, double noise_sigma, double offset,
             std::mt19937_64& rng) {
    Comparator c{noise_sigma, offset, &rng};
    return c(vin_held, vdac);
}

}  // namespace tracksar
