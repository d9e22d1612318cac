#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tracksar {

enum class Mode { Regular, Tracking };

enum class StepPolicyKind {
    // Smallest power of two >= the code-domain variation bound.
    Eq13PowerOfTwo,
    // Smallest power of two s whose reachable span 2s-1 covers the bound.
    CoveragePowerOfTwo,
    // Caller-supplied power of two.
    Explicit,
};

struct StepPolicy {
    StepPolicyKind kind = StepPolicyKind::CoveragePowerOfTwo;
    int explicit_value = 0;  // only read when kind == Explicit

    static StepPolicy eq13() { return {StepPolicyKind::Eq13PowerOfTwo, 0}; }
    static StepPolicy coverage() { return {StepPolicyKind::CoveragePowerOfTwo, 0}; }
    static StepPolicy explicit_step(int value) { return {StepPolicyKind::Explicit, value}; }
};

enum class ChargeAccounting {
    // Per-event charge drawn from the reference, clamped at zero: charge
    // pushed back into the reference is not recovered. Default.
    DrawnOnly,
    // Signed state-difference accounting; sums to zero over closed code
    // cycles at fixed held input. Kept for conservation checks.
    NetCharge,
};

struct AdcConfig {
    int bits = 8;
    double vref = 1.0;               // volts, unipolar input range [0, vref]
    double unit_cap = 15e-15;        // farads
    double max_sample_rate = 1e6;    // samples/s
    Mode mode = Mode::Regular;
    int osr = 64;                    // oversampling ratio M, used in tracking mode
    StepPolicy step_policy{};
    double comparator_noise_sigma = 0.0;  // volts, rms
    double comparator_offset = 0.0;       // volts
    double cap_mismatch_sigma = 0.0;      // relative, per unit cap
    std::uint64_t rng_seed = 0;
};

struct Waveform {
    std::vector<double> samples;  // volts
    double sample_rate = 0.0;     // hertz
};

struct CycleTraceEntry {
    int step = 0;          // step register value during this cycle; 0 marks the final correction
    int code_before = 0;
    double dac_volts = 0.0;
    bool decision = false;  // comparator output: held input above the DAC level
    int code_after = 0;
};

struct CycleTrace {
    std::vector<CycleTraceEntry> entries;
    bool final_correction_applied = false;
    int cycles = 0;
    bool overload = false;
    bool input_clamped = false;
    // Regular mode resets the DAC to zero before searching; the code it came
    // from is recorded so the reset transition can be charged to this
    // conversion's energy. Empty in tracking mode.
    std::optional<int> reset_from;
};

struct ConversionRecord {
    std::size_t sample_index = 0;
    double vin = 0.0;
    int code = 0;
    int cycles = 0;
    bool overload = false;
    CycleTrace trace;
};

}  // namespace tracksar
