#pragma once

#include <cstddef>
#include <string>

#include "tracksar/types.hpp"

namespace tracksar {

// samples[n] = offset + amplitude*cos(2*pi*frequency*n/sample_rate + phase).
// Requires frequency < sample_rate/2, count >= 1, finite parameters.
Waveform gen_sine(double amplitude, double frequency, double sample_rate,
                  double phase, double offset, std::size_t count);

// Coherent variant: exactly `cycles` periods in `count` samples, i.e.
// frequency snapped to cycles*sample_rate/count. cycles must be odd and
// coprime with count so every sample lands on a distinct phase.
Waveform gen_sine_coherent(double amplitude, double offset, double sample_rate,
                           std::size_t count, int cycles);

// Largest odd J <= count/(2*osr) coprime with count; the snapped frequency
// J*fs/count then never exceeds fs/(2*osr), keeping the variation bound valid.
int coherent_cycles_for_osr(std::size_t count, int osr);

// Linear ramp from v_start to v_end inclusive. count >= 2.
Waveform gen_ramp(double v_start, double v_end, std::size_t count);

// One decimal voltage per line; a single leading non-numeric header line is
// skipped. Parse errors name the offending line number.
Waveform from_csv(const std::string& path, double sample_rate);

}  // namespace tracksar
