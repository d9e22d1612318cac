#pragma once

// Sample-to-sample variation bounds for an oversampled sinusoid and the
// initial step sizing derived from them. With sample rate 2*M*f the input
// phase advances by pi/M per sample, so adjacent samples of A*cos(pi*n/M+phi)
// can differ by at most a few codes once M is large; these bounds size the
// tracking-mode search window.

#include "tracksar/types.hpp"

namespace tracksar {

struct DeltaBound {
    double exact_volts = 0.0;   // A*sin(pi/M)
    double approx_volts = 0.0;  // A*pi/M, small-angle form
    int codes = 0;              // ceil(sin(pi/M) * (2^bits - 1))
};

// Largest adjacent-sample swing the closed form predicts, in volts.
// Requires amplitude >= 0 and M >= 2.
double max_delta_exact(double amplitude, int osr);

// Small-angle version, always >= max_delta_exact.
double max_delta_approx(double amplitude, int osr);

// Variation bound expressed in output codes. bits in [4, 16].
int max_delta_codes(int osr, int bits);

DeltaBound delta_bound(double amplitude, int osr, int bits);

// Power-of-two initial step for the tracking search. Throws if the policy
// demands a step above 2^(bits-1); regular mode covers that case.
int initial_step(int osr, int bits, StepPolicy policy);

// Exhaustive oracle: max over a phase grid and one full signal period of
// |x[n] - x[n-1]| with x[n] = amplitude*cos(pi*n/M + phi). phase_grid >= 100.
double brute_force_max_delta(double amplitude, int osr, int phase_grid);

}  // namespace tracksar
