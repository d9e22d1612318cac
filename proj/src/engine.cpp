#include "tracksar/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tracksar/bounds.hpp"

namespace tracksar {

int cycles_for(int initial_step) {
    if (initial_step < 1 || (initial_step & (initial_step - 1)) != 0) {
        throw std::invalid_argument("engine: initial step must be a power of two, got " +
                                    std::to_string(initial_step));
    }
    int log2 = 0;
    while ((1 << log2) < initial_step) ++log2;
    return log2 + 2;
}

namespace {

int saturate(int code, int max_code) {
    return code < 0 ? 0 : (code > max_code ? max_code : code);
}

}  // namespace

CycleTrace convert(EngineState& state, CapArray& arr, double vin,
                   const CompareFn& cmp) {
    if (state.initial_step < 1 ||
        (state.initial_step & (state.initial_step - 1)) != 0 ||
        state.initial_step > (1 << (arr.bits - 1))) {
        throw std::invalid_argument(
            "engine: conversion attempted without a valid initial step");
    }
    sample_input(arr, vin);

    CycleTrace trace;
    trace.input_clamped = arr.input_clamped;
    int max_code = (1 << arr.bits) - 1;

    int code = state.current_code;
    if (state.mode == Mode::Regular) {
        trace.reset_from = code;
        code = 0;
    }

    for (int step = state.initial_step; step >= 1; step >>= 1) {
        CycleTraceEntry entry;
        entry.step = step;
        entry.code_before = code;
        entry.dac_volts = dac_voltage(arr, code);
        entry.decision = cmp(arr.held_input, entry.dac_volts);
        code = saturate(entry.decision ? code + step : code - step, max_code);
        entry.code_after = code;
        trace.entries.push_back(entry);
    }

    // Final correction: one more comparator look; a high DAC level pulls the
    // code down one, a low one leaves it.
    CycleTraceEntry last;
    last.step = 0;
    last.code_before = code;
    last.dac_volts = dac_voltage(arr, code);
    last.decision = cmp(arr.held_input, last.dac_volts);
    if (!last.decision) {
        code = saturate(code - 1, max_code);
        trace.final_correction_applied = true;
    }
    last.code_after = code;
    trace.entries.push_back(last);

    trace.cycles = static_cast<int>(trace.entries.size());
    // Strictly more than one LSB of residual error counts as an overload; the
    // relative guard keeps DAC-ratio rounding (~1 ulp) from flipping the
    // classification when the input sits exactly on a rail.
    double lsb = arr.vref / static_cast<double>(1 << arr.bits);
    trace.overload =
        std::fabs(arr.held_input - dac_voltage(arr, code)) > lsb * (1.0 + 1e-9);

    state.current_code = code;
    arr.code = code;
    return trace;
}

Engine::Engine(const AdcConfig& config)
    : config_(config), rng_(config.rng_seed), arr_(make_cap_array(config, rng_)) {
    if (config_.comparator_noise_sigma < 0.0 ||
        !std::isfinite(config_.comparator_noise_sigma)) {
        throw std::invalid_argument("engine: comparator_noise_sigma must be >= 0");
    }
    if (!std::isfinite(config_.comparator_offset)) {
        throw std::invalid_argument("engine: comparator_offset must be finite");
    }
    state_.mode = config_.mode;
    state_.current_code = 0;
    state_.acquired = false;
    if (config_.mode == Mode::Tracking) {
        state_.initial_step = initial_step(config_.osr, config_.bits,
                                           config_.step_policy);
    } else {
        state_.initial_step = 1 << (config_.bits - 1);
    }
}

ConversionRecord Engine::convert_sample(double vin, std::size_t sample_index) {
    Comparator cmp{config_.comparator_noise_sigma, config_.comparator_offset,
                   &rng_};
    CompareFn fn = [&cmp](double a, double b) { return cmp(a, b); };

    ConversionRecord rec;
    rec.sample_index = sample_index;
    rec.vin = vin;

    if (state_.mode == Mode::Tracking && !state_.acquired) {
        // Acquisition: the first sample gets a full-range regular conversion
        // to seed the tracking window.
        EngineState acq;
        acq.mode = Mode::Regular;
        acq.initial_step = 1 << (config_.bits - 1);
        acq.current_code = state_.current_code;
        rec.trace = convert(acq, arr_, vin, fn);
        state_.current_code = acq.current_code;
        state_.acquired = true;
    } else {
        rec.trace = convert(state_, arr_, vin, fn);
        if (state_.mode == Mode::Regular) state_.acquired = true;
    }
    rec.code = state_.current_code;
    rec.cycles = rec.trace.cycles;
    rec.overload = rec.trace.overload;
    return rec;
}

std::vector<ConversionRecord> Engine::run(const Waveform& waveform) {
    if (waveform.samples.empty()) {
        throw std::invalid_argument("engine: waveform is empty");
    }
    std::vector<ConversionRecord> records;
    records.reserve(waveform.samples.size());
    for (std::size_t i = 0; i < waveform.samples.size(); ++i) {
        records.push_back(convert_sample(waveform.samples[i], i));
    }
    return records;
}

void Engine::reconfigure(Mode mode, StepPolicy policy) {
    config_.mode = mode;
    config_.step_policy = policy;
    state_.mode = mode;
    if (mode == Mode::Tracking) {
        state_.initial_step = initial_step(config_.osr, config_.bits, policy);
        state_.acquired = false;  // next sample re-acquires
    } else {
        state_.initial_step = 1 << (config_.bits - 1);
        state_.current_code = 0;
        arr_.code = 0;
    }
}

}  // namespace tracksar
