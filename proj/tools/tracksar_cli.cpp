// tracksar command-line front end. Talks to the simulator exclusively
// through the C API in tracksar.h, the same surface other language
// bindings would use.
//
// Exit codes: 0 success, 2 usage error (bad flags or invalid values),
// 1 runtime failure (I/O and similar).

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tracksar.h"

namespace {

int fail_status(tracksar_status status) {
    std::fprintf(stderr, "error: %s\n", tracksar_last_error());
    return status == TRACKSAR_ERR_RUNTIME ? 1 : 2;
}

int fail_handle() {
    std::fprintf(stderr, "error: %s\n", tracksar_last_error());
    return 1;
}

int usage_error(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return 2;
}

#define TRY(call)                                         \
    do {                                                  \
        tracksar_status try_status_ = (call);             \
        if (try_status_ != TRACKSAR_OK) {                 \
            return fail_status(try_status_);              \
        }                                                 \
    } while (0)

struct GlobalOpts {
    std::string config_path;
    long long seed = 0;
    std::string out_dir = ".";
    std::string format = "csv";
    bool trace = false;
    CLI::Option* config_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* format_opt = nullptr;
    CLI::Option* trace_opt = nullptr;
};

// --seed beats TRACKSAR_SEED beats whatever the config file carries.
std::optional<std::string> resolve_seed(const GlobalOpts& g) {
    if (g.seed_opt->count() > 0) return std::to_string(g.seed);
    if (const char* env = std::getenv("TRACKSAR_SEED")) return std::string(env);
    return std::nullopt;
}

struct BoundsOpts {
    int osr = 0;
    int bits = 8;
    double amplitude = 0.5;
    std::string policy = "coverage";
};

int run_bounds(const BoundsOpts& o) {
    double exact = 0.0;
    double approx = 0.0;
    int codes = 0;
    int step = 0;
    int cycles = 0;
    TRY(tracksar_max_delta_volts(o.amplitude, o.osr, &exact, &approx));
    TRY(tracksar_max_delta_codes(o.osr, o.bits, &codes));
    TRY(tracksar_initial_step(o.osr, o.bits, o.policy.c_str(), &step));
    TRY(tracksar_cycles_for(step, &cycles));
    std::printf("osr=%d\n", o.osr);
    std::printf("bits=%d\n", o.bits);
    std::printf("amplitude_v=%.9g\n", o.amplitude);
    std::printf("max_delta_exact_v=%.9g\n", exact);
    std::printf("max_delta_approx_v=%.9g\n", approx);
    std::printf("max_delta_codes=%d\n", codes);
    std::printf("policy=%s\n", o.policy.c_str());
    std::printf("initial_step=%d\n", step);
    std::printf("cycles=%d\n", cycles);
    return 0;
}

struct ExperimentOpts {
    std::string preset;
    std::string stimulus;
    double amplitude = 0.5;
    double offset = 0.5;
    std::size_t samples = 4096;
    int cycles = 0;
    double ramp_start = 0.0;
    double ramp_end = 1.0;
    std::string csv_file;
    std::string analyses;
    std::string window;
    std::size_t fft_size = 4096;
    std::string name;
    std::vector<std::string> overrides;  // key=value converter settings
    CLI::Option* preset_opt = nullptr;
    CLI::Option* stimulus_opt = nullptr;
    CLI::Option* csv_opt = nullptr;
    CLI::Option* analyses_opt = nullptr;
    CLI::Option* window_opt = nullptr;
    CLI::Option* fft_opt = nullptr;
    CLI::Option* name_opt = nullptr;
};

void attach_experiment_opts(CLI::App* sub, ExperimentOpts& o,
                            bool with_analyses) {
    o.preset_opt =
        sub->add_option("--preset", o.preset, "Canned experiment recipe")
            ->check(CLI::IsMember({"table2-osr32", "table2-osr64",
                                   "table2-osr256", "fig2"}));
    o.stimulus_opt = sub->add_option("--stimulus", o.stimulus,
                                     "Stimulus kind: sine, ramp or csv")
                         ->check(CLI::IsMember({"sine", "ramp", "csv"}));
    o.preset_opt->excludes(o.stimulus_opt);
    sub->add_option("--amplitude", o.amplitude, "Sine amplitude in volts");
    sub->add_option("--offset", o.offset, "Sine offset in volts");
    sub->add_option("--samples", o.samples, "Record length");
    sub->add_option("--cycles", o.cycles,
                    "Sine periods in the record (0 derives from the OSR)");
    sub->add_option("--ramp-start", o.ramp_start, "Ramp start voltage");
    sub->add_option("--ramp-end", o.ramp_end, "Ramp end voltage");
    o.csv_opt = sub->add_option("--csv-file", o.csv_file,
                                "Stimulus CSV, one voltage per line");
    if (with_analyses) {
        o.analyses_opt = sub->add_option(
            "--analyses", o.analyses,
            "Comma list of trace,energy,spectrum,linearity");
    }
    o.window_opt = sub->add_option("--window", o.window, "Spectral window")
                       ->check(CLI::IsMember({"rectangular", "rect", "hann"}));
    o.fft_opt = sub->add_option("--fft-size", o.fft_size,
                                "Spectrum length, power of two");
    o.name_opt = sub->add_option("--name", o.name, "Output file prefix");
    sub->add_option("--set", o.overrides,
                    "Converter override key=value, repeatable");
}

int run_experiment_cmd(const ExperimentOpts& o, const GlobalOpts& g,
                       const char* forced_analyses) {
    tracksar_experiment* raw = o.preset_opt->count() > 0
                                   ? tracksar_experiment_preset(o.preset.c_str())
                                   : tracksar_experiment_create();
    if (!raw) return fail_handle();
    std::unique_ptr<tracksar_experiment, decltype(&tracksar_experiment_destroy)>
        exp(raw, &tracksar_experiment_destroy);

    if (g.config_opt->count() > 0) {
        TRY(tracksar_experiment_load_config(exp.get(), g.config_path.c_str()));
    }
    for (const std::string& kv : o.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            return usage_error("--set expects key=value, got '" + kv + "'");
        }
        TRY(tracksar_experiment_set_config(exp.get(), kv.substr(0, eq).c_str(),
                                           kv.substr(eq + 1).c_str()));
    }

    bool have_csv = o.csv_opt->count() > 0;
    if (o.stimulus_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "stimulus", o.stimulus.c_str()));
        if (o.stimulus == "sine") {
            TRY(tracksar_experiment_set(exp.get(), "sine.amplitude",
                                        std::to_string(o.amplitude).c_str()));
            TRY(tracksar_experiment_set(exp.get(), "sine.offset",
                                        std::to_string(o.offset).c_str()));
            TRY(tracksar_experiment_set(exp.get(), "sine.count",
                                        std::to_string(o.samples).c_str()));
            TRY(tracksar_experiment_set(exp.get(), "sine.cycles",
                                        std::to_string(o.cycles).c_str()));
        } else if (o.stimulus == "ramp") {
            TRY(tracksar_experiment_set(exp.get(), "ramp.start",
                                        std::to_string(o.ramp_start).c_str()));
            TRY(tracksar_experiment_set(exp.get(), "ramp.end",
                                        std::to_string(o.ramp_end).c_str()));
            TRY(tracksar_experiment_set(exp.get(), "ramp.count",
                                        std::to_string(o.samples).c_str()));
        } else {
            if (!have_csv) {
                return usage_error("--stimulus csv needs --csv-file");
            }
            TRY(tracksar_experiment_set(exp.get(), "csv.path",
                                        o.csv_file.c_str()));
        }
    } else if (have_csv) {
        TRY(tracksar_experiment_set(exp.get(), "stimulus", "csv"));
        TRY(tracksar_experiment_set(exp.get(), "csv.path", o.csv_file.c_str()));
    } else if (o.preset_opt->count() == 0) {
        return usage_error(
            "no stimulus: pass --preset, --stimulus or --csv-file");
    }

    if (forced_analyses) {
        TRY(tracksar_experiment_set(exp.get(), "analyses", forced_analyses));
    } else if (o.analyses_opt && o.analyses_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "analyses", o.analyses.c_str()));
    }
    if (o.window_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "window", o.window.c_str()));
    }
    if (o.fft_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "fft_size",
                                    std::to_string(o.fft_size).c_str()));
    }
    if (o.name_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "name", o.name.c_str()));
    }
    if (g.out_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "out_dir", g.out_dir.c_str()));
    }
    if (g.format_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "format", g.format.c_str()));
    }
    if (g.trace_opt->count() > 0) {
        TRY(tracksar_experiment_set(exp.get(), "include_traces",
                                    g.trace ? "1" : "0"));
    }
    if (auto seed = resolve_seed(g)) {
        TRY(tracksar_experiment_set_config(exp.get(), "rng_seed",
                                           seed->c_str()));
    }

    TRY(tracksar_experiment_run(exp.get()));
    const char* summary = tracksar_experiment_summary(exp.get());
    if (!summary) return fail_handle();
    std::printf("%s\n", summary);
    const char* files = tracksar_experiment_files(exp.get());
    if (files && *files) {
        std::printf("%s\n", files);
    }
    return 0;
}

struct SweepOpts {
    std::vector<int> osrs;
    std::string policy = "table2";
};

int run_sweep(const SweepOpts& o, const GlobalOpts& g) {
    if (o.osrs.empty()) {
        return usage_error("sweep needs at least one OSR in --osr");
    }
    tracksar_config* raw = g.config_opt->count() > 0
                               ? tracksar_config_load(g.config_path.c_str())
                               : tracksar_config_create();
    if (!raw) return fail_handle();
    std::unique_ptr<tracksar_config, decltype(&tracksar_config_destroy)> cfg(
        raw, &tracksar_config_destroy);
    if (auto seed = resolve_seed(g)) {
        TRY(tracksar_config_set(cfg.get(), "rng_seed", seed->c_str()));
    }

    tracksar_sweep* sraw = tracksar_sweep_run(cfg.get(), o.osrs.data(),
                                              o.osrs.size(), o.policy.c_str());
    if (!sraw) return fail_handle();
    std::unique_ptr<tracksar_sweep, decltype(&tracksar_sweep_destroy)> sweep(
        sraw, &tracksar_sweep_destroy);

    size_t rows = tracksar_sweep_rows(sweep.get());
    bool decreasing = true;
    double prev_total = 0.0;
    for (size_t i = 0; i < rows; ++i) {
        tracksar_sweep_row row;
        TRY(tracksar_sweep_row_get(sweep.get(), i, &row));
        std::printf(
            "osr=%d policy=%s initial_step=%d cycles=%d "
            "tracking_total_pj=%.6f regular_total_pj=%.6f ratio=%.4f\n",
            row.osr, row.policy, row.initial_step, row.cycles,
            row.tracking_total_j * 1e12, row.regular_total_j * 1e12,
            row.ratio);
        if (i > 0 && row.tracking_total_j >= prev_total) decreasing = false;
        prev_total = row.tracking_total_j;
    }
    if (rows > 1) {
        std::printf("tracking_energy_decreasing=%s\n",
                    decreasing ? "PASS" : "FAIL");
    }

    std::string path = g.out_dir + "/sweep." + g.format;
    TRY(tracksar_sweep_write(sweep.get(), path.c_str(), g.format.c_str()));
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-mode SAR converter simulator"};
    app.require_subcommand(1);

    GlobalOpts g;
    g.config_opt = app.add_option("--config", g.config_path,
                                  "Converter config file (key = value lines)");
    g.seed_opt = app.add_option("--seed", g.seed,
                                "RNG seed; beats TRACKSAR_SEED and the config");
    g.out_opt = app.add_option("--out", g.out_dir, "Output directory");
    g.format_opt = app.add_option("--format", g.format, "Report format")
                       ->check(CLI::IsMember({"csv", "json"}));
    g.trace_opt = app.add_flag("--trace", g.trace,
                               "Embed per-cycle traces in JSON reports");

    CLI::App* bounds =
        app.add_subcommand("bounds", "Step-size planning for an OSR");
    bounds->fallthrough();
    BoundsOpts bo;
    bounds->add_option("--osr", bo.osr, "Oversampling ratio")->required();
    bounds->add_option("--bits", bo.bits, "Resolution in bits");
    bounds->add_option("--amplitude", bo.amplitude,
                       "Sine amplitude in volts for the voltage bounds");
    bounds->add_option("--policy", bo.policy,
                       "eq13, coverage or a power-of-two step");

    CLI::App* simulate =
        app.add_subcommand("simulate", "Convert a stimulus and write reports");
    simulate->fallthrough();
    ExperimentOpts so;
    attach_experiment_opts(simulate, so, true);

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Convert a tone and report the spectrum");
    spectrum->fallthrough();
    ExperimentOpts po;
    attach_experiment_opts(spectrum, po, false);

    CLI::App* energy =
        app.add_subcommand("energy", "Convert a stimulus and report energy");
    energy->fallthrough();
    ExperimentOpts eo;
    attach_experiment_opts(energy, eo, false);

    CLI::App* sweep =
        app.add_subcommand("sweep", "Tracking vs regular energy across OSRs");
    sweep->fallthrough();
    SweepOpts wo;
    sweep->add_option("--osr", wo.osrs, "Comma-separated OSR list")
        ->delimiter(',');
    sweep->add_option("--policy", wo.policy, "Step policy for every row")
        ->check(CLI::IsMember({"eq13", "coverage", "table2"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (bounds->parsed()) return run_bounds(bo);
    if (simulate->parsed()) return run_experiment_cmd(so, g, nullptr);
    if (spectrum->parsed()) return run_experiment_cmd(po, g, "spectrum");
    if (energy->parsed()) return run_experiment_cmd(eo, g, "energy");
    if (sweep->parsed()) return run_sweep(wo, g);
    return 2;
}
