#include "tracksar/signals.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tracksar {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string("signals: ") + name +
                                    " must be finite");
    }
}

}  // namespace

Waveform gen_sine(double amplitude, double frequency, double sample_rate,
                  double phase, double offset, std::size_t count) {
    require_finite(amplitude, "amplitude");
    require_finite(frequency, "frequency");
    require_finite(sample_rate, "sample_rate");
    require_finite(phase, "phase");
    require_finite(offset, "offset");
    if (amplitude < 0.0) {
        throw std::invalid_argument("signals: amplitude must be >= 0");
    }
    if (sample_rate <= 0.0) {
        throw std::invalid_argument("signals: sample_rate must be > 0");
    }
    if (frequency < 0.0 || frequency >= sample_rate / 2.0) {
        throw std::invalid_argument(
            "signals: frequency must lie in [0, sample_rate/2)");
    }
    if (count == 0) {
        throw std::invalid_argument("signals: sample count must be >= 1");
    }
    Waveform w;
    w.sample_rate = sample_rate;
    w.samples.resize(count);
    double omega = 2.0 * kPi * frequency / sample_rate;
    for (std::size_t n = 0; n < count; ++n) {
        w.samples[n] = offset + amplitude * std::cos(omega * n + phase);
    }
    return w;
}

Waveform gen_sine_coherent(double amplitude, double offset, double sample_rate,
                           std::size_t count, int cycles) {
    if (count < 2) {
        throw std::invalid_argument("signals: coherent record needs >= 2 samples");
    }
    if (cycles < 1 || cycles % 2 == 0) {
        throw std::invalid_argument("signals: coherent cycle count must be odd");
    }
    if (static_cast<std::size_t>(cycles) >= count / 2) {
        throw std::invalid_argument(
            "signals: coherent cycle count must stay below count/2");
    }
    if (std::gcd(static_cast<std::size_t>(cycles), count) != 1) {
        throw std::invalid_argument(
            "signals: coherent cycle count must be coprime with the record length");
    }
    double frequency = static_cast<double>(cycles) * sample_rate /
                       static_cast<double>(count);
    return gen_sine(amplitude, frequency, sample_rate, 0.0, offset, count);
}

int coherent_cycles_for_osr(std::size_t count, int osr) {
    if (osr < 2) {
        throw std::invalid_argument("signals: oversampling ratio must be >= 2");
    }
    long target = static_cast<long>(count) / (2L * osr);
    int j = static_cast<int>(target);
    if (j % 2 == 0) --j;
    while (j >= 1 && std::gcd(static_cast<std::size_t>(j), count) != 1) j -= 2;
    if (j < 1) {
        throw std::invalid_argument(
            "signals: record too short for a coherent tone at this ratio");
    }
    return j;
}

Waveform gen_ramp(double v_start, double v_end, std::size_t count) {
    require_finite(v_start, "v_start");
    require_finite(v_end, "v_end");
    if (count < 2) {
        throw std::invalid_argument("signals: ramp needs >= 2 samples");
    }
    Waveform w;
    w.sample_rate = 0.0;
    w.samples.resize(count);
    double span = v_end - v_start;
    for (std::size_t n = 0; n < count; ++n) {
        w.samples[n] = v_start + span * static_cast<double>(n) /
                                     static_cast<double>(count - 1);
    }
    w.samples.back() = v_end;
    return w;
}

Waveform from_csv(const std::string& path, double sample_rate) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("signals: cannot open '" + path + "'");
    }
    Waveform w;
    w.sample_rate = sample_rate;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Trim whitespace and a possible trailing CR.
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        std::string token = line.substr(begin, end - begin + 1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                         value);
        bool parsed = ec == std::errc() && ptr == token.data() + token.size();
        if (!parsed) {
            if (line_no == 1 && w.samples.empty()) continue;  // header line
            throw std::runtime_error("signals: '" + path + "' line " +
                                     std::to_string(line_no) +
                                     ": not a number: '" + token + "'");
        }
        if (!std::isfinite(value)) {
            throw std::runtime_error("signals: '" + path + "' line " +
                                     std::to_string(line_no) +
                                     ": value must be finite");
        }
        w.samples.push_back(value);
    }
    if (w.samples.empty()) {
        throw std::runtime_error("signals: '" + path + "' contains no samples");
    }
    return w;
}

}  // namespace tracksar
