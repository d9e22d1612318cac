#include "tracksar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tracksar {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 decimation-in-time transform, in place.
void fft(std::vector<std::complex<double>>& x) {
    std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double angle = -2.0 * kPi / static_cast<double>(len);
        std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = x[i + k];
                std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::size_t fold_bin(std::size_t bin, std::size_t fft_size) {
    std::size_t m = bin % fft_size;
    return m > fft_size / 2 ? fft_size - m : m;
}

}  // namespace

SpectrumReport spectrum(const std::vector<double>& centered, double sample_rate,
                        Window window, std::size_t fft_size) {
    if (!is_power_of_two(fft_size) || fft_size < 8) {
        throw std::invalid_argument("metrics: fft_size must be a power of two >= 8");
    }
    if (centered.size() < fft_size) {
        throw std::invalid_argument(
            "metrics: " + std::to_string(centered.size()) +
            " samples is fewer than fft_size " + std::to_string(fft_size));
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw std::invalid_argument("metrics: sample_rate must be positive");
    }

    std::vector<std::complex<double>> buf(fft_size);
    double windowed_ms = 0.0;
    for (std::size_t n = 0; n < fft_size; ++n) {
        double w = 1.0;
        if (window == Window::Hann) {
            w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(n) /
                                     static_cast<double>(fft_size));
        }
        double v = centered[n] * w;
        windowed_ms += v * v;
        buf[n] = {v, 0.0};
    }
    windowed_ms /= static_cast<double>(fft_size);
    if (!(windowed_ms > 0.0)) {
        throw std::runtime_error("metrics: input is identically zero");
    }
    fft(buf);

    SpectrumReport report;
    report.sample_rate = sample_rate;
    report.fft_size = fft_size;
    report.window = window;

    std::size_t half = fft_size / 2;
    double norm = static_cast<double>(fft_size) * static_cast<double>(fft_size);
    report.psd_linear.resize(half);
    report.freq_bins.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        double scale = (k == 0) ? 1.0 : 2.0;  // one-sided
        report.psd_linear[k] = scale * std::norm(buf[k]) / norm;
        report.freq_bins[k] = sample_rate * static_cast<double>(k) /
                              static_cast<double>(fft_size);
    }

    // Hann smears energy across neighbours; widen the masks accordingly.
    std::size_t carrier_halfwidth = window == Window::Hann ? 3 : 1;
    std::size_t dc_width = window == Window::Hann ? 3 : 1;

    std::size_t carrier = dc_width;
    for (std::size_t k = dc_width + 1; k < half; ++k) {
        if (report.psd_linear[k] > report.psd_linear[carrier]) carrier = k;
    }
    std::vector<double> sorted = report.psd_linear;
    std::nth_element(sorted.begin(), sorted.begin() + half / 2, sorted.end());
    double median = sorted[half / 2];
    if (report.psd_linear[carrier] < median * std::pow(10.0, 0.6)) {
        throw std::runtime_error(
            "metrics: missing carrier (no bin 6 dB above the median)");
    }
    report.carrier_bin = carrier;
    report.carrier_freq = report.freq_bins[carrier];

    auto in_carrier = [&](std::size_t k) {
        return k + carrier_halfwidth >= carrier &&
               k <= carrier + carrier_halfwidth;
    };

    double carrier_power = 0.0;
    double residual_power = 0.0;  // noise plus distortion
    double worst_spur = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        if (k < dc_width) continue;
        if (in_carrier(k)) {
            carrier_power += report.psd_linear[k];
        } else {
            residual_power += report.psd_linear[k];
            worst_spur = std::max(worst_spur, report.psd_linear[k]);
        }
    }
    if (carrier_power <= 0.0 || residual_power <= 0.0 || worst_spur <= 0.0) {
        throw std::runtime_error("metrics: degenerate spectrum");
    }

    double harmonic_power = 0.0;
    for (int h = 2; h <= 5; ++h) {
        std::size_t bin = fold_bin(static_cast<std::size_t>(h) * carrier, fft_size);
        for (std::size_t k = bin > carrier_halfwidth ? bin - carrier_halfwidth : 0;
             k <= bin + carrier_halfwidth && k < half; ++k) {
            if (!in_carrier(k) && k >= dc_width) {
                harmonic_power += report.psd_linear[k];
            }
        }
    }

    report.sndr_db = 10.0 * std::log10(carrier_power / residual_power);
    report.sfdr_db =
        10.0 * std::log10(report.psd_linear[carrier] / worst_spur);
    report.thd_db = harmonic_power > 0.0
                        ? 10.0 * std::log10(harmonic_power / carrier_power)
                        : -std::numeric_limits<double>::infinity();
    report.enob_bits = (report.sndr_db - 1.76) / 6.02;

    double carrier_ref = report.psd_linear[carrier];
    report.psd_db.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        double p = report.psd_linear[k];
        report.psd_db[k] = p > 0.0 ? 10.0 * std::log10(p / carrier_ref)
                                   : -400.0;
    }
    return report;
}

std::vector<double> decimate_average(const std::vector<double>& values,
                                     int factor) {
    if (factor < 1) {
        throw std::invalid_argument("metrics: decimation factor must be >= 1");
    }
    if (values.empty() || values.size() % static_cast<std::size_t>(factor) != 0) {
        throw std::invalid_argument(
            "metrics: decimation factor must divide the sample count");
    }
    if (factor == 1) return values;
    std::vector<double> out(values.size() / static_cast<std::size_t>(factor));
    for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < factor; ++j) {
            acc += values[i * static_cast<std::size_t>(factor) +
                          static_cast<std::size_t>(j)];
        }
        out[i] = acc / static_cast<double>(factor);
    }
    return out;
}

LinearityReport dnl_inl(const std::vector<int>& codes, int bits,
                        StimulusKind stimulus) {
    if (bits < 4 || bits > 16) {
        throw std::invalid_argument("metrics: bits must be in [4, 16]");
    }
    int n_codes = 1 << bits;
    std::vector<long> hist(n_codes, 0);
    for (int c : codes) {
        if (c < 0 || c >= n_codes) {
            throw std::invalid_argument("metrics: code " + std::to_string(c) +
                                        " outside [0, 2^bits)");
        }
        ++hist[c];
    }
    std::string starved;
    for (int c = 0; c < n_codes; ++c) {
        if (hist[c] < 16) {
            if (!starved.empty()) starved += ", ";
            starved += std::to_string(c);
        }
    }
    if (!starved.empty()) {
        throw std::invalid_argument(
            "metrics: histogram starved (<16 hits) at codes: " + starved);
    }

    double total = static_cast<double>(codes.size());
    // Transition level into code k from the cumulative histogram. The ramp
    // maps counts linearly; the sine needs the arcsine correction, where the
    // unknown amplitude and offset cancel in the later normalization.
    std::vector<double> transition(n_codes + 1, 0.0);
    double cum = 0.0;
    for (int k = 1; k < n_codes; ++k) {
        cum += static_cast<double>(hist[k - 1]);
        transition[k] = stimulus == StimulusKind::Ramp
                            ? cum
                            : -std::cos(kPi * cum / total);
    }

    LinearityReport report;
    report.dnl_lsb.assign(n_codes, 0.0);
    report.inl_lsb.assign(n_codes, 0.0);
    int first = 1;
    int last = n_codes - 1;  // transition index range [first, last]
    double avg_width = (transition[last] - transition[first]) /
                       static_cast<double>(last - first);
    if (!(avg_width > 0.0)) {
        throw std::runtime_error("metrics: degenerate histogram");
    }
    for (int k = first; k < last; ++k) {
        double width = transition[k + 1] - transition[k];
        report.dnl_lsb[k] = width / avg_width - 1.0;
        report.max_abs_dnl = std::max(report.max_abs_dnl,
                                      std::fabs(report.dnl_lsb[k]));
    }
    for (int k = first; k <= last; ++k) {
        double ideal = transition[first] +
                       avg_width * static_cast<double>(k - first);
        report.inl_lsb[k] = (transition[k] - ideal) / avg_width;
        report.max_abs_inl = std::max(report.max_abs_inl,
                                      std::fabs(report.inl_lsb[k]));
    }
    return report;
}

double fom(double power_watts, double bandwidth_hz, double enob_bits) {
    if (!(power_watts > 0.0) || !std::isfinite(power_watts)) {
        throw std::invalid_argument("metrics: power must be positive");
    }
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
        throw std::invalid_argument("metrics: bandwidth must be positive");
    }
    if (!std::isfinite(enob_bits)) {
        throw std::invalid_argument("metrics: enob must be finite");
    }
    return power_watts / (bandwidth_hz * std::pow(2.0, enob_bits));
}

}  // namespace tracksar
