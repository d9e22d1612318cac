#pragma once

#include <string>
#include <vector>

#include "tracksar/adc_model.hpp"
#include "tracksar/types.hpp"

namespace tracksar {

struct EnergyModelParams {
    double comparator_energy = 50e-15;  // joules per decision
    double logic_energy = 100e-15;      // joules per clock cycle
    ChargeAccounting accounting = ChargeAccounting::DrawnOnly;
};

struct ConversionEnergy {
    double dac = 0.0;         // joules
    double comparator = 0.0;  // joules
    double logic = 0.0;       // joules
    double total() const { return dac + comparator + logic; }
};

// Reference energy for switching the bottom-plate pattern from one code to
// another with the input held. DrawnOnly sums the charge flowing out of the
// reference into the caps connected to it after the event, clamped at zero;
// NetCharge is the signed difference of the reference-side stored charge, a
// state function that telescopes to zero around any closed code cycle.
double dac_transition_energy(const CapArray& arr, int code_from, int code_to,
                             double vin_held, ChargeAccounting accounting);

// Energy for one conversion: every search-cycle DAC move plus the recorded
// reset transition; the final correction cycle is comparator-only, so its
// code decrement switches no caps. Comparator and logic costs scale with the
// cycle count.
ConversionEnergy conversion_energy(const CycleTrace& trace, const CapArray& arr,
                                   const EnergyModelParams& params);

struct EnergyReport {
    std::vector<ConversionEnergy> per_conversion;
    double dac_total = 0.0;
    double comparator_total = 0.0;
    double logic_total = 0.0;
    double total = 0.0;
    double per_sample_avg = 0.0;
    std::size_t samples = 0;
    EnergyModelParams params;
    std::string units_note;
};

EnergyReport build_energy_report(const std::vector<ConversionRecord>& records,
                                 const CapArray& arr,
                                 const EnergyModelParams& params);

struct SweepRow {
    int osr = 0;
    std::string policy;
    int initial_step = 0;
    int cycles = 0;
    double tracking_dac = 0.0;     // joules per sample, averaged
    double tracking_cmp = 0.0;
    double tracking_logic = 0.0;
    double tracking_total = 0.0;
    double regular_total = 0.0;    // same stimulus through regular mode
    double ratio = 0.0;            // tracking_total / regular_total
};

enum class SweepPolicyMode {
    Eq13,
    Coverage,
    // Fixed initial steps 32/8/4 at OSR 32/64/256 (the reference design
    // points, which follow no single formula), coverage elsewhere.
    Table2,
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::string units_note;
};

// For each OSR, runs one full coherent period in tracking and regular mode
// on the same stimulus and tabulates average per-sample energy. Rows execute
// concurrently; row order follows the input list.
SweepTable sweep_energy_vs_osr(const AdcConfig& base_config,
                               const std::vector<int>& osr_list,
                               SweepPolicyMode policy_mode,
                               const EnergyModelParams& params);

}  // namespace tracksar
