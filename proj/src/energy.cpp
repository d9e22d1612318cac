#include "tracksar/energy.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "tracksar/bounds.hpp"
#include "tracksar/engine.hpp"
#include "tracksar/signals.hpp"

namespace tracksar {

namespace {

constexpr const char* kUnitsNote =
    "energies in joules; per-sample figures are pJ/sample at the configured "
    "sample rate (1 MS/s default)";

double top_plate_voltage(const CapArray& arr, int code) {
    return dac_voltage(arr, code) - arr.held_input;
}

// Charge on cap i with the given bottom-plate pattern.
double cap_charge(const CapArray& arr, int code, int i, double v_top) {
    double v_bottom = (code & (1 << i)) ? arr.vref : 0.0;
    return arr.caps[i] * (v_bottom - v_top);
}

// Charge stored on the caps currently tied to the reference; a state
// function of the code, so differences telescope around closed cycles.
double reference_side_charge(const CapArray& arr, int code) {
    double v_top = top_plate_voltage(arr, code);
    double q = 0.0;
    for (int i = 0; i < arr.bits; ++i) {
        if (code & (1 << i)) q += arr.caps[i] * (arr.vref - v_top);
    }
    return q;
}

}  // namespace

double dac_transition_energy(const CapArray& arr, int code_from, int code_to,
                             double vin_held, ChargeAccounting accounting) {
    int max_code = (1 << arr.bits) - 1;
    if (code_from < 0 || code_from > max_code || code_to < 0 ||
        code_to > max_code) {
        throw std::invalid_argument("energy: code outside [0, 2^bits)");
    }
    if (!std::isfinite(vin_held)) {
        throw std::invalid_argument("energy: held input must be finite");
    }
    CapArray held = arr;
    held.held_input = vin_held;

    if (accounting == ChargeAccounting::NetCharge) {
        double dq = reference_side_charge(held, code_to) -
                    reference_side_charge(held, code_from);
        return held.vref * dq;
    }

    // Charge flowing out of the reference during the event: every cap whose
    // bottom plate sits at vref after the switch settles draws its charge
    // change through the reference.
    double v_top_before = top_plate_voltage(held, code_from);
    double v_top_after = top_plate_voltage(held, code_to);
    double dq = 0.0;
    for (int i = 0; i < arr.bits; ++i) {
        if (code_to & (1 << i)) {
            dq += cap_charge(held, code_to, i, v_top_after) -
                  cap_charge(held, code_from, i, v_top_before);
        }
    }
    return held.vref * (dq > 0.0 ? dq : 0.0);
}

ConversionEnergy conversion_energy(const CycleTrace& trace, const CapArray& arr,
                                   const EnergyModelParams& params) {
    ConversionEnergy e;
    if (trace.entries.empty()) return e;

    double vin = arr.held_input;
    if (trace.reset_from.has_value()) {
        e.dac += dac_transition_energy(arr, *trace.reset_from, 0, vin,
                                       params.accounting);
    }
    for (const auto& entry : trace.entries) {
        if (entry.step < 1) continue;  // final correction switches no caps
        if (entry.code_before != entry.code_after) {
            e.dac += dac_transition_energy(arr, entry.code_before,
                                           entry.code_after, vin,
                                           params.accounting);
        }
    }
    e.comparator = params.comparator_energy * trace.cycles;
    e.logic = params.logic_energy * trace.cycles;
    return e;
}

EnergyReport build_energy_report(const std::vector<ConversionRecord>& records,
                                 const CapArray& arr,
                                 const EnergyModelParams& params) {
    EnergyReport report;
    report.params = params;
    report.units_note = kUnitsNote;
    report.samples = records.size();
    report.per_conversion.reserve(records.size());
    CapArray scratch = arr;
    for (const auto& rec : records) {
        scratch.held_input = rec.vin < 0.0
                                 ? 0.0
                                 : (rec.vin > arr.vref ? arr.vref : rec.vin);
        ConversionEnergy e = conversion_energy(rec.trace, scratch, params);
        report.dac_total += e.dac;
        report.comparator_total += e.comparator;
        report.logic_total += e.logic;
        report.per_conversion.push_back(e);
    }
    report.total = report.dac_total + report.comparator_total +
                   report.logic_total;
    report.per_sample_avg =
        records.empty() ? 0.0 : report.total / static_cast<double>(records.size());
    return report;
}

namespace {

StepPolicy sweep_policy(SweepPolicyMode mode, int osr) {
    switch (mode) {
        case SweepPolicyMode::Eq13:
            return StepPolicy::eq13();
        case SweepPolicyMode::Coverage:
            return StepPolicy::coverage();
        case SweepPolicyMode::Table2:
            // Reference design points use these fixed steps; no single
            // formula reproduces all three.
            if (osr == 32) return StepPolicy::explicit_step(32);
            if (osr == 64) return StepPolicy::explicit_step(8);
            if (osr == 256) return StepPolicy::explicit_step(4);
            return StepPolicy::coverage();
    }
    return StepPolicy::coverage();
}

std::string sweep_policy_label(SweepPolicyMode mode) {
    switch (mode) {
        case SweepPolicyMode::Eq13: return "eq13";
        case SweepPolicyMode::Coverage: return "coverage";
        case SweepPolicyMode::Table2: return "table2";
    }
    return "?";
}

SweepRow sweep_one(const AdcConfig& base, int osr, SweepPolicyMode policy_mode,
                   const EnergyModelParams& params) {
    SweepRow row;
    row.osr = osr;
    row.policy = sweep_policy_label(policy_mode);

    AdcConfig tracking_cfg = base;
    tracking_cfg.mode = Mode::Tracking;
    tracking_cfg.osr = osr;
    tracking_cfg.step_policy = sweep_policy(policy_mode, osr);
    row.initial_step =
        initial_step(osr, base.bits, tracking_cfg.step_policy);
    row.cycles = cycles_for(row.initial_step);

    std::size_t count = 4096;
    int cycles_in_record = coherent_cycles_for_osr(count, osr);
    Waveform tone = gen_sine_coherent(base.vref / 2.0, base.vref / 2.0,
                                      base.max_sample_rate, count,
                                      cycles_in_record);

    Engine tracker(tracking_cfg);
    auto tracked = tracker.run(tone);
    // Steady-state average: the one-off acquisition sample is excluded.
    std::vector<ConversionRecord> steady(tracked.begin() + 1, tracked.end());
    EnergyReport t = build_energy_report(steady, tracker.cap_array(), params);
    row.tracking_dac = t.dac_total / static_cast<double>(steady.size());
    row.tracking_cmp = t.comparator_total / static_cast<double>(steady.size());
    row.tracking_logic = t.logic_total / static_cast<double>(steady.size());
    row.tracking_total = t.per_sample_avg;

    AdcConfig regular_cfg = base;
    regular_cfg.mode = Mode::Regular;
    regular_cfg.osr = osr;
    Engine reference(regular_cfg);
    auto regular = reference.run(tone);
    EnergyReport r = build_energy_report(regular, reference.cap_array(), params);
    row.regular_total = r.per_sample_avg;
    row.ratio = row.tracking_total / row.regular_total;
    return row;
}

}  // namespace

SweepTable sweep_energy_vs_osr(const AdcConfig& base_config,
                               const std::vector<int>& osr_list,
                               SweepPolicyMode policy_mode,
                               const EnergyModelParams& params) {
    if (osr_list.empty()) {
        throw std::invalid_argument("energy: sweep needs at least one ratio");
    }
    SweepTable table;
    table.units_note = kUnitsNote;
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(osr_list.size());
    for (int osr : osr_list) {
        futures.push_back(std::async(std::launch::async, sweep_one, base_config,
                                     osr, policy_mode, params));
    }
    for (auto& f : futures) table.rows.push_back(f.get());
    return table;
}

}  // namespace tracksar
