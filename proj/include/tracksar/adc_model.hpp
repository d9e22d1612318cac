#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tracksar/types.hpp"

namespace tracksar {

// Binary-weighted capacitor array with one dummy unit cap, bottom-plate
// sampling. cap[i] carries weight 2^i; total_cap includes the dummy.
struct CapArray {
    int bits = 8;
    double vref = 1.0;
    std::vector<double> caps;  // farads, index i = bit i
    double dummy_cap = 0.0;    // farads
    double total_cap = 0.0;    // farads
    double held_input = 0.0;   // volts, last sampled value
    bool input_clamped = false;
    int code = 0;              // current bottom-plate pattern
};

// Ideal weights scaled by unit_cap, each perturbed once per instance as
// C_i*(1+eps_i) with eps_i ~ N(0, sigma/sqrt(2^i)) matching unit-cap
// statistics. sigma = 0 gives the exact binary weights.
CapArray make_cap_array(const AdcConfig& config, std::mt19937_64& rng);

// Clamps vin into [0, vref], stores it and flags when clamping occurred.
void sample_input(CapArray& arr, double vin);

// DAC level vref * (sum of selected caps) / total_cap; equals
// vref*code/2^bits with ideal weights. code in [0, 2^bits - 1].
double dac_voltage(const CapArray& arr, int code);

struct Comparator {
    double noise_sigma = 0.0;  // volts rms, gaussian, drawn per decision
    double offset = 0.0;       // volts
    std::mt19937_64* rng = nullptr;  // required when noise_sigma > 0

    // True iff vin_held + noise > vdac + offset. Exact equality is "not
    // greater".
    bool operator()(double vin_held, double vdac) const;
};

bool compare(double vin_held, double vdac, double noise_sigma, double offset,
             std::mt19937_64& rng);

}  // namespace tracksar
