#pragma once

#include <stdexcept>
#include <string>

#include "relaywise/model.hpp"

namespace relaywise {

/// Scenario file problem: malformed syntax, unknown keys, invalid values.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses a scenario document (JSON). `name` is used in error messages.
Scenario parse_scenario(const std::string& text, const std::string& name = "<string>");

/// Loads and validates a scenario file. dB fields are converted to linear at
/// ingestion; user_count and prefactor are computed unless overridden.
Scenario load_scenario(const std::string& path);

/// FNV-1a content hash, 16 hex digits.
std::string fingerprint_of(const std::string& content);

}  // namespace relaywise
