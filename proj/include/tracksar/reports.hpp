#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tracksar/energy.hpp"
#include "tracksar/metrics.hpp"
#include "tracksar/types.hpp"

namespace tracksar {

// All writers are deterministic: same data, same bytes.

void write_records_csv(std::ostream& out,
                       const std::vector<ConversionRecord>& records);
void write_records_json(std::ostream& out,
                        const std::vector<ConversionRecord>& records,
                        const AdcConfig& config, bool include_traces);

void write_energy_csv(std::ostream& out, const EnergyReport& report);
void write_energy_json(std::ostream& out, const EnergyReport& report,
                       const AdcConfig& config);

void write_spectrum_csv(std::ostream& out, const SpectrumReport& report);
void write_spectrum_json(std::ostream& out, const SpectrumReport& report,
                         const AdcConfig& config);

void write_linearity_csv(std::ostream& out, const LinearityReport& report);
void write_linearity_json(std::ostream& out, const LinearityReport& report,
                          const AdcConfig& config);

void write_sweep_csv(std::ostream& out, const SweepTable& table);
void write_sweep_json(std::ostream& out, const SweepTable& table,
                      const AdcConfig& config);

// JSON fragment echoing every resolved config field; embedded in reports so
// they are self-describing.
std::string config_echo_json(const AdcConfig& config);

void write_file(const std::string& path, const std::string& contents);

}  // namespace tracksar
