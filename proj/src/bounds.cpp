#include "tracksar/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tracksar {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_amplitude(double amplitude) {
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
        throw std::invalid_argument("bounds: amplitude must be finite and >= 0");
    }
}

void check_osr(int osr) {
    if (osr < 2) {
        throw std::invalid_argument("bounds: oversampling ratio must be >= 2, got " +
                                    std::to_string(osr));
    }
}

void check_bits(int bits) {
    if (bits < 4 || bits > 16) {
        throw std::invalid_argument("bounds: bits must be in [4, 16], got " +
                                    std::to_string(bits));
    }
}

int next_power_of_two(int value) {
    int p = 1;
    while (p < value) p <<= 1;
    return p;
}

}  // namespace

double max_delta_exact(double amplitude, int osr) {
    check_amplitude(amplitude);
    check_osr(osr);
    return amplitude * std::sin(kPi / osr);
}

double max_delta_approx(double amplitude, int osr) {
    check_amplitude(amplitude);
    check_osr(osr);
    return amplitude * kPi / osr;
}

int max_delta_codes(int osr, int bits) {
    check_osr(osr);
    check_bits(bits);
    double full_scale_codes = static_cast<double>((1 << bits) - 1);
    return static_cast<int>(std::ceil(std::sin(kPi / osr) * full_scale_codes));
}

DeltaBound delta_bound(double amplitude, int osr, int bits) {
    DeltaBound b;
    b.exact_volts = max_delta_exact(amplitude, osr);
    b.approx_volts = max_delta_approx(amplitude, osr);
    b.codes = max_delta_codes(osr, bits);
    return b;
}

int initial_step(int osr, int bits, StepPolicy policy) {
    check_bits(bits);
    int limit = 1 << (bits - 1);
    int step = 0;
    switch (policy.kind) {
        case StepPolicyKind::Eq13PowerOfTwo:
            step = next_power_of_two(max_delta_codes(osr, bits));
            break;
        case StepPolicyKind::CoveragePowerOfTwo: {
            int bound = max_delta_codes(osr, bits);
            step = 1;
            while (2 * step - 1 < bound) step <<= 1;
            break;
        }
        case StepPolicyKind::Explicit:
            step = policy.explicit_value;
            if (step < 1 || (step & (step - 1)) != 0) {
                throw std::invalid_argument(
                    "bounds: explicit step must be a power of two >= 1, got " +
                    std::to_string(step));
            }
            break;
    }
    if (step > limit) {
        throw std::invalid_argument(
            "bounds: initial step " + std::to_string(step) + " exceeds 2^(bits-1) = " +
            std::to_string(limit) + "; use regular mode for this ratio");
    }
    return step;
}

double brute_force_max_delta(double amplitude, int osr, int phase_grid) {
    check_amplitude(amplitude);
    check_osr(osr);
    if (phase_grid < 100) {
        throw std::invalid_argument("bounds: phase grid must have >= 100 points");
    }
    // One full period of cos(pi*n/M + phi) spans 2*M samples.
    int period = 2 * osr;
    double worst = 0.0;
    for (int p = 0; p < phase_grid; ++p) {
        double phi = 2.0 * kPi * p / phase_grid;
        double prev = amplitude * std::cos(phi);
        for (int n = 1; n <= period; ++n) {
            double cur = amplitude * std::cos(kPi * n / osr + phi);
            double delta = std::fabs(cur - prev);
            if (delta > worst) worst = delta;
            prev = cur;
        }
    }
    return worst;
}

}  // namespace tracksar
