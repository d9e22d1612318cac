#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tracksar/energy.hpp"
#include "tracksar/metrics.hpp"
#include "tracksar/types.hpp"

namespace tracksar {

enum class Analysis { Trace, Energy, Spectrum, Linearity };

struct SineStimulus {
    double amplitude = 0.5;
    double offset = 0.5;
    std::size_t count = 4096;
    // cycles > 0 pins the coherent bin; otherwise derived from the OSR.
    int cycles = 0;
};

struct RampStimulus {
    double v_start = 0.0;
    double v_end = 1.0;
    std::size_t count = 65536;
};

struct CsvStimulus {
    std::string path;
};

struct ExperimentSpec {
    AdcConfig config;
    // Exactly one stimulus.
    std::optional<SineStimulus> sine;
    std::optional<RampStimulus> ramp;
    std::optional<CsvStimulus> csv;
    std::set<Analysis> analyses{Analysis::Trace};
    EnergyModelParams energy_params;
    Window window = Window::Rectangular;
    std::size_t fft_size = 4096;
    bool include_traces = false;   // embed per-cycle traces in the JSON
    std::string out_dir = ".";
    std::string format = "csv";    // csv | json
    std::string name = "run";      // output file prefix
};

struct ExperimentSummary {
    std::string mode;
    std::size_t samples = 0;
    double cycles_per_sample = 0.0;  // excludes the acquisition sample
    std::size_t overloads = 0;
    std::optional<double> enob_bits;
    std::optional<double> sfdr_db;
    std::optional<double> total_energy_j;
    std::optional<double> max_abs_dnl;
    std::vector<std::string> files_written;
    std::string summary_line;
};

// Builds the stimulus, runs the engine, performs the requested analyses and
// writes one report file per analysis into out_dir.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

// Canned experiment recipes with every parameter pinned, for one-command
// reproduction. Names: table2-osr32, table2-osr64, table2-osr256, fig2.
ExperimentSpec preset_spec(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace tracksar
