#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tracksar/types.hpp"

namespace tracksar {

enum class Window { Rectangular, Hann };

enum class StimulusKind { Ramp, Sine };

struct SpectrumReport {
    std::vector<double> freq_bins;   // hertz, fft_size/2 entries
    std::vector<double> psd_db;      // dB relative to the carrier bin
    std::vector<double> psd_linear;  // power; sums to the windowed mean
                                     // square less the excluded Nyquist bin
    std::size_t carrier_bin = 0;
    double carrier_freq = 0.0;       // hertz
    double sndr_db = 0.0;
    double sfdr_db = 0.0;
    double thd_db = 0.0;             // harmonics 2..5 vs carrier
    double enob_bits = 0.0;
    // Joules per conversion step, power/(bandwidth*2^enob). Experiment runs
    // fill this when the energy analysis supplies the average power; zero
    // when the power is unknown.
    double fom_j_per_conv = 0.0;
    double sample_rate = 0.0;
    std::size_t fft_size = 0;
    Window window = Window::Rectangular;
};

// Periodogram of a mid-scale-centered code stream. The first fft_size values
// are used; requires at least that many. The carrier is the largest non-DC
// bin and must stand 6 dB above the median bin. SNDR excludes DC and the
// carrier neighborhood (+-1 bin rectangular, +-3 Hann, matching the window's
// leakage width); SFDR is carrier to largest remaining bin; ENOB is
// (SNDR - 1.76)/6.02.
SpectrumReport spectrum(const std::vector<double>& centered, double sample_rate,
                        Window window, std::size_t fft_size);

// Non-overlapping boxcar average; factor must divide the length. Factor 1 is
// the identity. Preserves the mean.
std::vector<double> decimate_average(const std::vector<double>& values,
                                     int factor);

struct LinearityReport {
    std::vector<double> dnl_lsb;  // per code, first/last code excluded (0)
    std::vector<double> inl_lsb;  // endpoint-fit line
    double max_abs_dnl = 0.0;
    double max_abs_inl = 0.0;
};

// Code-density linearity. Ramp stimulus expects a uniform histogram; sine
// uses the arcsine correction (transition levels from the cumulative
// histogram via -cos(pi*cum/total), amplitude and offset cancel). Every
// interior code must be hit at least 16 times; the error lists starved codes.
LinearityReport dnl_inl(const std::vector<int>& codes, int bits,
                        StimulusKind stimulus);

// power / (bandwidth * 2^enob), joules per conversion step.
double fom(double power_watts, double bandwidth_hz, double enob_bits);

}  // namespace tracksar
