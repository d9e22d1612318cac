#pragma once

#include <functional>
#include <random>

#include "tracksar/adc_model.hpp"
#include "tracksar/types.hpp"

namespace tracksar {

struct EngineState {
    Mode mode = Mode::Regular;
    int initial_step = 0;      // power of two <= 2^(bits-1)
    int current_code = 0;      // persists across tracking conversions
    bool acquired = false;     // tracking: first sample already converted
};

// Comparator decisions per conversion: one per step halving plus the final
// correction, i.e. log2(initial_step) + 2. initial_step must be a power of
// two >= 1.
int cycles_for(int initial_step);

using CompareFn = std::function<bool(double vin_held, double vdac)>;

// One conversion of the held input. Regular mode restarts from code 0 (the
// DAC reset is recorded in the trace); tracking mode searches out from the
// previous code with the configured step. The search adds or subtracts the
// step after each comparison, halving until 1, then a final correction cycle
// drops the code by one when the DAC sits above the input. Saturating
// arithmetic throughout. Sets the overload flag when the result is more than
// one LSB away from the held input.
CycleTrace convert(EngineState& state, CapArray& arr, double vin,
                   const CompareFn& cmp);

class Engine {
  public:
    explicit Engine(const AdcConfig& config);

    // Converts every sample in order; in tracking mode the first sample is
    // acquired with a full regular-mode conversion before the windowed
    // search takes over.
    std::vector<ConversionRecord> run(const Waveform& waveform);

    ConversionRecord convert_sample(double vin, std::size_t sample_index);

    // Mode switches mid-stream: entering tracking forces re-acquisition,
    // entering regular clears the held code.
    void reconfigure(Mode mode, StepPolicy policy);

    const AdcConfig& config() const { return config_; }
    const CapArray& cap_array() const { return arr_; }
    const EngineState& state() const { return state_; }

  private:
    AdcConfig config_;
    std::mt19937_64 rng_;
    CapArray arr_;
    EngineState state_;
};

}  // namespace tracksar
