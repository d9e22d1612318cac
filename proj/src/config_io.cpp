#include "tracksar/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace tracksar {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                     out);
    if (ec != std::errc() || ptr != value.data() + value.size() ||
        !std::isfinite(out)) {
        throw std::invalid_argument("config: key '" + key +
                                    "': expected a finite number, got '" +
                                    value + "'");
    }
    return out;
}

long parse_int(const std::string& key, const std::string& value) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                     out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config: key '" + key +
                                    "': expected an integer, got '" + value +
                                    "'");
    }
    return out;
}

}  // namespace

void apply_config_entry(AdcConfig& config, const std::string& raw_key,
                        const std::string& raw_value) {
    std::string key = trim(raw_key);
    std::string value = trim(raw_value);
    if (key == "bits") {
        config.bits = static_cast<int>(parse_int(key, value));
    } else if (key == "vref") {
        config.vref = parse_double(key, value);
    } else if (key == "unit_cap") {
        config.unit_cap = parse_double(key, value);
    } else if (key == "max_sample_rate") {
        config.max_sample_rate = parse_double(key, value);
    } else if (key == "mode") {
        if (value == "regular") {
            config.mode = Mode::Regular;
        } else if (value == "tracking") {
            config.mode = Mode::Tracking;
        } else {
            throw std::invalid_argument(
                "config: key 'mode': expected regular|tracking, got '" + value +
                "'");
        }
    } else if (key == "osr") {
        config.osr = static_cast<int>(parse_int(key, value));
    } else if (key == "step_policy") {
        if (value == "eq13") {
            config.step_policy = StepPolicy::eq13();
        } else if (value == "coverage") {
            config.step_policy = StepPolicy::coverage();
        } else {
            config.step_policy =
                StepPolicy::explicit_step(static_cast<int>(parse_int(key, value)));
        }
    } else if (key == "comparator_noise_sigma") {
        config.comparator_noise_sigma = parse_double(key, value);
    } else if (key == "comparator_offset") {
        config.comparator_offset = parse_double(key, value);
    } else if (key == "cap_mismatch_sigma") {
        config.cap_mismatch_sigma = parse_double(key, value);
    } else if (key == "rng_seed") {
        config.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

AdcConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open '" + path + "'");
    }
    AdcConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: '" + path + "' line " +
                                     std::to_string(line_no) +
                                     ": expected key = value");
        }
        try {
            apply_config_entry(config, stripped.substr(0, eq),
                               stripped.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("config: '" + path + "' line " +
                                     std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

std::string mode_name(Mode mode) {
    return mode == Mode::Regular ? "regular" : "tracking";
}

std::string policy_name(const StepPolicy& policy) {
    switch (policy.kind) {
        case StepPolicyKind::Eq13PowerOfTwo: return "eq13";
        case StepPolicyKind::CoveragePowerOfTwo: return "coverage";
        case StepPolicyKind::Explicit:
            return std::to_string(policy.explicit_value);
    }
    return "?";
}

std::string accounting_name(ChargeAccounting accounting) {
    return accounting == ChargeAccounting::DrawnOnly ? "drawn_only"
                                                     : "net_charge";
}

}  // namespace tracksar
