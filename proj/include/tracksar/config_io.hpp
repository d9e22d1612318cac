#pragma once

#include <string>

#include "tracksar/types.hpp"

namespace tracksar {

// Flat key-value file, one `key = value` per line, '#' starts a comment.
// Keys match the AdcConfig field names. mode: regular|tracking; step_policy:
// eq13|coverage|<power-of-two integer>. Errors name the key and line.
AdcConfig load_config_file(const std::string& path);

// Applies one key/value pair with the same syntax as the file; shared by the
// file loader and programmatic overrides.
void apply_config_entry(AdcConfig& config, const std::string& key,
                        const std::string& value);

std::string mode_name(Mode mode);
std::string policy_name(const StepPolicy& policy);
std::string accounting_name(ChargeAccounting accounting);

}  // namespace tracksar
