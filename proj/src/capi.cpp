#include "tracksar.h"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracksar/bounds.hpp"
#include "tracksar/config_io.hpp"
#include "tracksar/engine.hpp"
#include "tracksar/experiment.hpp"
#include "tracksar/reports.hpp"
#include "tracksar/signals.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

tracksar_status classify(const std::exception& e) {
    set_error(e.what());
    return dynamic_cast<const std::invalid_argument*>(&e) != nullptr
               ? TRACKSAR_ERR_INVALID_ARGUMENT
               : TRACKSAR_ERR_RUNTIME;
}

tracksar_status null_arg(const char* name) {
    g_last_error = std::string("null argument: ") + name;
    return TRACKSAR_ERR_NULL_POINTER;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
tracksar_status guarded(Fn&& fn) {
    try {
        fn();
        return TRACKSAR_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        set_error("unknown failure");
        return TRACKSAR_ERR_RUNTIME;
    }
}

// Allocates a handle from fn's return value; NULL + last_error on failure.
template <typename Handle, typename Fn>
Handle* make_handle(Fn&& fn) {
    try {
        return new Handle{fn()};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    } catch (...) {
        set_error("unknown failure");
        return nullptr;
    }
}

long parse_long(const std::string& key, const std::string& value) {
    long out = 0;
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("experiment: key '" + key +
                                    "': expected an integer, got '" + value +
                                    "'");
    }
    return out;
}

double parse_num(const std::string& key, const std::string& value) {
    double out = 0.0;
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("experiment: key '" + key +
                                    "': expected a number, got '" + value +
                                    "'");
    }
    return out;
}

tracksar::StepPolicy parse_policy(const std::string& policy) {
    tracksar::AdcConfig scratch;
    tracksar::apply_config_entry(scratch, "step_policy", policy);
    return scratch.step_policy;
}

}  // namespace

struct tracksar_config {
    tracksar::AdcConfig cfg;
    std::string echo;
};

struct tracksar_waveform {
    tracksar::Waveform wf;
};

struct tracksar_result {
    std::vector<tracksar::ConversionRecord> records;
    tracksar::AdcConfig cfg;
};

struct tracksar_experiment {
    tracksar::ExperimentSpec spec;
    std::string summary;
    std::string files;
    bool ran = false;
};

struct tracksar_sweep {
    tracksar::SweepTable table;
    tracksar::AdcConfig cfg;
};

namespace {

tracksar_status record_field(const tracksar_result* result, size_t index,
                             int* out, int which) {
    if (!result) return null_arg("result");
    if (!out) return null_arg("out");
    if (index >= result->records.size()) {
        set_error("record index out of range");
        return TRACKSAR_ERR_INVALID_ARGUMENT;
    }
    const auto& r = result->records[index];
    *out = which == 0 ? r.code : (which == 1 ? r.cycles : (r.overload ? 1 : 0));
    return TRACKSAR_OK;
}

}  // namespace

extern "C" {

const char* tracksar_last_error(void) { return g_last_error.c_str(); }

/* ---- step-size planning --------------------------------------------- */

tracksar_status tracksar_max_delta_codes(int osr, int bits, int* out_codes) {
    if (!out_codes) return null_arg("out_codes");
    return guarded([&] { *out_codes = tracksar::max_delta_codes(osr, bits); });
}

tracksar_status tracksar_max_delta_volts(double amplitude, int osr,
                                         double* out_exact,
                                         double* out_approx) {
    if (!out_exact) return null_arg("out_exact");
    if (!out_approx) return null_arg("out_approx");
    return guarded([&] {
        *out_exact = tracksar::max_delta_exact(amplitude, osr);
        *out_approx = tracksar::max_delta_approx(amplitude, osr);
    });
}

tracksar_status tracksar_initial_step(int osr, int bits, const char* policy,
                                      int* out_step) {
    if (!policy) return null_arg("policy");
    if (!out_step) return null_arg("out_step");
    return guarded([&] {
        *out_step = tracksar::initial_step(osr, bits, parse_policy(policy));
    });
}

tracksar_status tracksar_cycles_for(int initial_step, int* out_cycles) {
    if (!out_cycles) return null_arg("out_cycles");
    return guarded([&] { *out_cycles = tracksar::cycles_for(initial_step); });
}

/* ---- converter configuration ----------------------------------------- */

tracksar_config* tracksar_config_create(void) {
    return make_handle<tracksar_config>([] { return tracksar_config{}; });
}

tracksar_config* tracksar_config_load(const char* path) {
    if (!path) {
        null_arg("path");
        return nullptr;
    }
    return make_handle<tracksar_config>([&] {
        return tracksar_config{tracksar::load_config_file(path), {}};
    });
}

tracksar_status tracksar_config_set(tracksar_config* config, const char* key,
                                    const char* value) {
    if (!config) return null_arg("config");
    if (!key) return null_arg("key");
    if (!value) return null_arg("value");
    return guarded([&] { tracksar::apply_config_entry(config->cfg, key, value); });
}

const char* tracksar_config_echo(tracksar_config* config) {
    if (!config) {
        null_arg("config");
        return nullptr;
    }
    config->echo = tracksar::config_echo_json(config->cfg);
    return config->echo.c_str();
}

void tracksar_config_destroy(tracksar_config* config) { delete config; }

/* ---- stimulus waveforms ----------------------------------------------- */

tracksar_waveform* tracksar_waveform_sine(double amplitude, double offset,
                                          double sample_rate, size_t count,
                                          int cycles) {
    return make_handle<tracksar_waveform>([&] {
        return tracksar_waveform{tracksar::gen_sine_coherent(
            amplitude, offset, sample_rate, count, cycles)};
    });
}

tracksar_waveform* tracksar_waveform_ramp(double v_start, double v_end,
                                          size_t count) {
    return make_handle<tracksar_waveform>([&] {
        return tracksar_waveform{tracksar::gen_ramp(v_start, v_end, count)};
    });
}

tracksar_waveform* tracksar_waveform_from_csv(const char* path,
                                              double sample_rate) {
    if (!path) {
        null_arg("path");
        return nullptr;
    }
    return make_handle<tracksar_waveform>([&] {
        return tracksar_waveform{tracksar::from_csv(path, sample_rate)};
    });
}

size_t tracksar_waveform_size(const tracksar_waveform* waveform) {
    return waveform ? waveform->wf.samples.size() : 0;
}

tracksar_status tracksar_waveform_sample(const tracksar_waveform* waveform,
                                         size_t index, double* out_volts) {
    if (!waveform) return null_arg("waveform");
    if (!out_volts) return null_arg("out_volts");
    if (index >= waveform->wf.samples.size()) {
        set_error("waveform index out of range");
        return TRACKSAR_ERR_INVALID_ARGUMENT;
    }
    *out_volts = waveform->wf.samples[index];
    return TRACKSAR_OK;
}

void tracksar_waveform_destroy(tracksar_waveform* waveform) { delete waveform; }

/* ---- conversion runs --------------------------------------------------- */

tracksar_result* tracksar_simulate(const tracksar_config* config,
                                   const tracksar_waveform* waveform) {
    if (!config || !waveform) {
        null_arg(!config ? "config" : "waveform");
        return nullptr;
    }
    return make_handle<tracksar_result>([&] {
        tracksar::Engine engine(config->cfg);
        return tracksar_result{engine.run(waveform->wf), config->cfg};
    });
}

size_t tracksar_result_size(const tracksar_result* result) {
    return result ? result->records.size() : 0;
}

tracksar_status tracksar_result_code(const tracksar_result* result,
                                     size_t index, int* out_code) {
    return record_field(result, index, out_code, 0);
}

tracksar_status tracksar_result_cycles(const tracksar_result* result,
                                       size_t index, int* out_cycles) {
    return record_field(result, index, out_cycles, 1);
}

tracksar_status tracksar_result_overload(const tracksar_result* result,
                                         size_t index, int* out_flag) {
    return record_field(result, index, out_flag, 2);
}

tracksar_status tracksar_result_write(const tracksar_result* result,
                                      const char* path, const char* format,
                                      int include_traces) {
    if (!result) return null_arg("result");
    if (!path) return null_arg("path");
    if (!format) return null_arg("format");
    return guarded([&] {
        std::string fmt = format;
        std::ostringstream buf;
        if (fmt == "csv") {
            tracksar::write_records_csv(buf, result->records);
        } else if (fmt == "json") {
            tracksar::write_records_json(buf, result->records, result->cfg,
                                         include_traces != 0);
        } else {
            throw std::invalid_argument("format must be csv or json");
        }
        tracksar::write_file(path, buf.str());
    });
}

void tracksar_result_destroy(tracksar_result* result) { delete result; }

/* ---- experiments -------------------------------------------------------- */

tracksar_experiment* tracksar_experiment_create(void) {
    return make_handle<tracksar_experiment>([] {
        tracksar_experiment e;
        e.spec.analyses = {tracksar::Analysis::Trace};
        return e;
    });
}

tracksar_experiment* tracksar_experiment_preset(const char* name) {
    if (!name) {
        null_arg("name");
        return nullptr;
    }
    return make_handle<tracksar_experiment>([&] {
        tracksar_experiment e;
        e.spec = tracksar::preset_spec(name);
        return e;
    });
}

tracksar_status tracksar_experiment_set_config(tracksar_experiment* experiment,
                                               const char* key,
                                               const char* value) {
    if (!experiment) return null_arg("experiment");
    if (!key) return null_arg("key");
    if (!value) return null_arg("value");
    return guarded(
        [&] { tracksar::apply_config_entry(experiment->spec.config, key, value); });
}

tracksar_status tracksar_experiment_load_config(tracksar_experiment* experiment,
                                                const char* path) {
    if (!experiment) return null_arg("experiment");
    if (!path) return null_arg("path");
    return guarded([&] {
        experiment->spec.config = tracksar::load_config_file(path);
    });
}

}  // extern "C"

namespace {

std::set<tracksar::Analysis> parse_analyses(const std::string& list) {
    std::set<tracksar::Analysis> out;
    std::string::size_type start = 0;
    while (start <= list.size()) {
        auto comma = list.find(',', start);
        std::string item = list.substr(
            start, comma == std::string::npos ? std::string::npos
                                              : comma - start);
        if (item == "trace") {
            out.insert(tracksar::Analysis::Trace);
        } else if (item == "energy") {
            out.insert(tracksar::Analysis::Energy);
        } else if (item == "spectrum") {
            out.insert(tracksar::Analysis::Spectrum);
        } else if (item == "linearity") {
            out.insert(tracksar::Analysis::Linearity);
        } else {
            throw std::invalid_argument(
                "experiment: unknown analysis '" + item +
                "' (expected trace, energy, spectrum, linearity)");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) {
        throw std::invalid_argument("experiment: analyses list is empty");
    }
    return out;
}

void experiment_apply(tracksar::ExperimentSpec& spec, const std::string& key,
                      const std::string& value) {
    using tracksar::CsvStimulus;
    using tracksar::RampStimulus;
    using tracksar::SineStimulus;
    if (key == "stimulus") {
        spec.sine.reset();
        spec.ramp.reset();
        spec.csv.reset();
        if (value == "sine") {
            spec.sine = SineStimulus{};
        } else if (value == "ramp") {
            spec.ramp = RampStimulus{};
        } else if (value == "csv") {
            spec.csv = CsvStimulus{};
        } else {
            throw std::invalid_argument(
                "experiment: stimulus must be sine, ramp or csv");
        }
    } else if (key == "sine.amplitude") {
        if (!spec.sine) spec.sine = SineStimulus{};
        spec.sine->amplitude = parse_num(key, value);
    } else if (key == "sine.offset") {
        if (!spec.sine) spec.sine = SineStimulus{};
        spec.sine->offset = parse_num(key, value);
    } else if (key == "sine.count") {
        if (!spec.sine) spec.sine = SineStimulus{};
        spec.sine->count = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "sine.cycles") {
        if (!spec.sine) spec.sine = SineStimulus{};
        spec.sine->cycles = static_cast<int>(parse_long(key, value));
    } else if (key == "ramp.start") {
        if (!spec.ramp) spec.ramp = RampStimulus{};
        spec.ramp->v_start = parse_num(key, value);
    } else if (key == "ramp.end") {
        if (!spec.ramp) spec.ramp = RampStimulus{};
        spec.ramp->v_end = parse_num(key, value);
    } else if (key == "ramp.count") {
        if (!spec.ramp) spec.ramp = RampStimulus{};
        spec.ramp->count = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "csv.path") {
        if (!spec.csv) spec.csv = CsvStimulus{};
        spec.csv->path = value;
    } else if (key == "analyses") {
        spec.analyses = parse_analyses(value);
    } else if (key == "window") {
        if (value == "rectangular" || value == "rect") {
            spec.window = tracksar::Window::Rectangular;
        } else if (value == "hann") {
            spec.window = tracksar::Window::Hann;
        } else {
            throw std::invalid_argument(
                "experiment: window must be rectangular or hann");
        }
    } else if (key == "fft_size") {
        spec.fft_size = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "out_dir") {
        spec.out_dir = value;
    } else if (key == "format") {
        spec.format = value;
    } else if (key == "name") {
        spec.name = value;
    } else if (key == "include_traces") {
        spec.include_traces = parse_long(key, value) != 0;
    } else {
        throw std::invalid_argument("experiment: unknown key '" + key + "'");
    }
}

}  // namespace

extern "C" {

tracksar_status tracksar_experiment_set(tracksar_experiment* experiment,
                                        const char* key, const char* value) {
    if (!experiment) return null_arg("experiment");
    if (!key) return null_arg("key");
    if (!value) return null_arg("value");
    return guarded([&] { experiment_apply(experiment->spec, key, value); });
}

tracksar_status tracksar_experiment_run(tracksar_experiment* experiment) {
    if (!experiment) return null_arg("experiment");
    return guarded([&] {
        tracksar::ExperimentSummary s = tracksar::run_experiment(experiment->spec);
        experiment->summary = s.summary_line;
        experiment->files.clear();
        for (std::size_t i = 0; i < s.files_written.size(); ++i) {
            if (i) experiment->files += '\n';
            experiment->files += s.files_written[i];
        }
        experiment->ran = true;
    });
}

const char* tracksar_experiment_summary(tracksar_experiment* experiment) {
    if (!experiment) {
        null_arg("experiment");
        return nullptr;
    }
    if (!experiment->ran) {
        set_error("experiment has not run");
        return nullptr;
    }
    return experiment->summary.c_str();
}

const char* tracksar_experiment_files(tracksar_experiment* experiment) {
    if (!experiment) {
        null_arg("experiment");
        return nullptr;
    }
    if (!experiment->ran) {
        set_error("experiment has not run");
        return nullptr;
    }
    return experiment->files.c_str();
}

void tracksar_experiment_destroy(tracksar_experiment* experiment) {
    delete experiment;
}

/* ---- energy sweeps ------------------------------------------------------ */

tracksar_sweep* tracksar_sweep_run(const tracksar_config* config,
                                   const int* osr_list, size_t osr_count,
                                   const char* policy_mode) {
    if (!config || !osr_list || !policy_mode) {
        null_arg(!config ? "config" : (!osr_list ? "osr_list" : "policy_mode"));
        return nullptr;
    }
    return make_handle<tracksar_sweep>([&] {
        std::string mode = policy_mode;
        tracksar::SweepPolicyMode policy;
        if (mode == "eq13") {
            policy = tracksar::SweepPolicyMode::Eq13;
        } else if (mode == "coverage") {
            policy = tracksar::SweepPolicyMode::Coverage;
        } else if (mode == "table2") {
            policy = tracksar::SweepPolicyMode::Table2;
        } else {
            throw std::invalid_argument(
                "sweep: policy must be eq13, coverage or table2");
        }
        std::vector<int> osrs(osr_list, osr_list + osr_count);
        return tracksar_sweep{
            tracksar::sweep_energy_vs_osr(config->cfg, osrs, policy,
                                          tracksar::EnergyModelParams{}),
            config->cfg};
    });
}

size_t tracksar_sweep_rows(const tracksar_sweep* sweep) {
    return sweep ? sweep->table.rows.size() : 0;
}

tracksar_status tracksar_sweep_row_get(const tracksar_sweep* sweep,
                                       size_t index,
                                       tracksar_sweep_row* out_row) {
    if (!sweep) return null_arg("sweep");
    if (!out_row) return null_arg("out_row");
    if (index >= sweep->table.rows.size()) {
        set_error("sweep row index out of range");
        return TRACKSAR_ERR_INVALID_ARGUMENT;
    }
    const auto& r = sweep->table.rows[index];
    out_row->osr = r.osr;
    out_row->initial_step = r.initial_step;
    out_row->cycles = r.cycles;
    out_row->tracking_dac_j = r.tracking_dac;
    out_row->tracking_cmp_j = r.tracking_cmp;
    out_row->tracking_logic_j = r.tracking_logic;
    out_row->tracking_total_j = r.tracking_total;
    out_row->regular_total_j = r.regular_total;
    out_row->ratio = r.ratio;
    std::snprintf(out_row->policy, sizeof out_row->policy, "%s",
                  r.policy.c_str());
    return TRACKSAR_OK;
}

tracksar_status tracksar_sweep_write(const tracksar_sweep* sweep,
                                     const char* path, const char* format) {
    if (!sweep) return null_arg("sweep");
    if (!path) return null_arg("path");
    if (!format) return null_arg("format");
    return guarded([&] {
        std::string fmt = format;
        std::ostringstream buf;
        if (fmt == "csv") {
            tracksar::write_sweep_csv(buf, sweep->table);
        } else if (fmt == "json") {
            tracksar::write_sweep_json(buf, sweep->table, sweep->cfg);
        } else {
            throw std::invalid_argument("format must be csv or json");
        }
        tracksar::write_file(path, buf.str());
    });
}

void tracksar_sweep_destroy(tracksar_sweep* sweep) { delete sweep; }

}  // extern "C"
