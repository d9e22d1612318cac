#include "tracksar/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tracksar/config_io.hpp"
#include "tracksar/engine.hpp"
#include "tracksar/reports.hpp"
#include "tracksar/signals.hpp"

namespace tracksar {

namespace {

Waveform build_stimulus(const ExperimentSpec& spec) {
    int provided = (spec.sine ? 1 : 0) + (spec.ramp ? 1 : 0) + (spec.csv ? 1 : 0);
    if (provided != 1) {
        throw std::invalid_argument(
            "experiment: exactly one stimulus must be given");
    }
    if (spec.sine) {
        const auto& s = *spec.sine;
        int cycles = s.cycles > 0
                         ? s.cycles
                         : coherent_cycles_for_osr(s.count, spec.config.osr);
        return gen_sine_coherent(s.amplitude, s.offset,
                                 spec.config.max_sample_rate, s.count, cycles);
    }
    if (spec.ramp) {
        Waveform w = gen_ramp(spec.ramp->v_start, spec.ramp->v_end,
                              spec.ramp->count);
        w.sample_rate = spec.config.max_sample_rate;
        return w;
    }
    return from_csv(spec.csv->path, spec.config.max_sample_rate);
}

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
    if (spec.analyses.empty()) {
        throw std::invalid_argument(
            "experiment: at least one analysis must be requested");
    }
    if (spec.format != "csv" && spec.format != "json") {
        throw std::invalid_argument("experiment: format must be csv or json");
    }
    Waveform stimulus = build_stimulus(spec);
    Engine engine(spec.config);
    auto records = engine.run(stimulus);

    ExperimentSummary summary;
    summary.mode = mode_name(spec.config.mode);
    summary.samples = records.size();
    std::size_t skip = spec.config.mode == Mode::Tracking && records.size() > 1
                           ? 1
                           : 0;  // acquisition sample
    long cycle_sum = 0;
    for (std::size_t i = skip; i < records.size(); ++i) {
        cycle_sum += records[i].cycles;
        if (records[i].overload) ++summary.overloads;
    }
    if (skip == 1 && records.front().overload) ++summary.overloads;
    summary.cycles_per_sample =
        static_cast<double>(cycle_sum) /
        static_cast<double>(records.size() - skip);

    bool json = spec.format == "json";
    auto emit = [&](const std::string& stem, auto writer) {
        std::string path = join_path(
            spec.out_dir, spec.name + "_" + stem + (json ? ".json" : ".csv"));
        std::ostringstream buf;
        writer(buf);
        write_file(path, buf.str());
        summary.files_written.push_back(path);
    };

    if (spec.analyses.count(Analysis::Trace)) {
        emit("records", [&](std::ostream& out) {
            if (json) {
                write_records_json(out, records, spec.config,
                                   spec.include_traces);
            } else {
                write_records_csv(out, records);
            }
        });
    }

    if (spec.analyses.count(Analysis::Energy)) {
        EnergyReport report =
            build_energy_report(records, engine.cap_array(), spec.energy_params);
        summary.total_energy_j = report.total;
        emit("energy", [&](std::ostream& out) {
            if (json) {
                write_energy_json(out, report, spec.config);
            } else {
                write_energy_csv(out, report);
            }
        });
    }

    if (spec.analyses.count(Analysis::Spectrum)) {
        double mid_scale = static_cast<double>(1 << (spec.config.bits - 1));
        std::vector<double> centered;
        centered.reserve(records.size());
        for (const auto& r : records) {
            centered.push_back(static_cast<double>(r.code) - mid_scale);
        }
        SpectrumReport report = spectrum(centered, stimulus.sample_rate,
                                         spec.window, spec.fft_size);
        if (summary.total_energy_j && *summary.total_energy_j > 0.0 &&
            !records.empty()) {
            // Average power over the run; signal bandwidth is the
            // oversampled band sample_rate/(2*osr).
            double power = *summary.total_energy_j * stimulus.sample_rate /
                           static_cast<double>(records.size());
            double bandwidth = stimulus.sample_rate / (2.0 * spec.config.osr);
            report.fom_j_per_conv = fom(power, bandwidth, report.enob_bits);
        }
        summary.enob_bits = report.enob_bits;
        summary.sfdr_db = report.sfdr_db;
        emit("spectrum", [&](std::ostream& out) {
            if (json) {
                write_spectrum_json(out, report, spec.config);
            } else {
                write_spectrum_csv(out, report);
            }
        });
    }

    if (spec.analyses.count(Analysis::Linearity)) {
        std::vector<int> codes;
        codes.reserve(records.size());
        for (const auto& r : records) codes.push_back(r.code);
        StimulusKind kind = spec.sine ? StimulusKind::Sine : StimulusKind::Ramp;
        LinearityReport report = dnl_inl(codes, spec.config.bits, kind);
        summary.max_abs_dnl = report.max_abs_dnl;
        emit("linearity", [&](std::ostream& out) {
            if (json) {
                write_linearity_json(out, report, spec.config);
            } else {
                write_linearity_csv(out, report);
            }
        });
    }

    std::ostringstream line;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", summary.cycles_per_sample);
    line << "mode=" << summary.mode << " samples=" << summary.samples
         << " cycles_per_sample=" << buf << " overloads=" << summary.overloads;
    if (summary.enob_bits) {
        std::snprintf(buf, sizeof buf, "%.2f", *summary.enob_bits);
        line << " enob=" << buf;
    }
    if (summary.sfdr_db) {
        std::snprintf(buf, sizeof buf, "%.1f", *summary.sfdr_db);
        line << " sfdr_db=" << buf;
    }
    summary.summary_line = line.str();
    return summary;
}

std::vector<std::string> preset_names() {
    return {"table2-osr32", "table2-osr64", "table2-osr256", "fig2"};
}

ExperimentSpec preset_spec(const std::string& name) {
    ExperimentSpec spec;
    spec.config.bits = 8;
    spec.config.vref = 1.0;
    spec.config.unit_cap = 15e-15;
    spec.config.max_sample_rate = 1e6;
    spec.config.mode = Mode::Tracking;
    spec.name = name;
    spec.fft_size = 4096;
    spec.window = Window::Rectangular;

    SineStimulus sine;
    sine.amplitude = 0.5;
    sine.offset = 0.5;
    sine.count = 4096;

    if (name == "table2-osr32") {
        spec.config.osr = 32;
        spec.config.step_policy = StepPolicy::explicit_step(32);
        spec.analyses = {Analysis::Trace, Analysis::Energy};
    } else if (name == "table2-osr64") {
        spec.config.osr = 64;
        spec.config.step_policy = StepPolicy::explicit_step(8);
        spec.analyses = {Analysis::Trace, Analysis::Energy};
    } else if (name == "table2-osr256") {
        spec.config.osr = 256;
        spec.config.step_policy = StepPolicy::explicit_step(4);
        spec.analyses = {Analysis::Trace, Analysis::Energy};
    } else if (name == "fig2") {
        spec.config.osr = 64;
        spec.config.step_policy = StepPolicy::explicit_step(8);
        spec.analyses = {Analysis::Trace, Analysis::Spectrum};
    } else {
        throw std::invalid_argument("experiment: unknown preset '" + name +
                                    "'; available: table2-osr32, table2-osr64, "
                                    "table2-osr256, fig2");
    }
    sine.cycles = coherent_cycles_for_osr(sine.count, spec.config.osr);
    spec.sine = sine;
    return spec;
}

}  // namespace tracksar
