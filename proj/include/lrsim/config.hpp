#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace lrsim {

inline constexpr int kSchemaVersion = 1;

// Oracle reference for verification: name + parameter object.
struct OracleSpec {
  std::string name;            // power_law | stretched | exponential |
                               // multiexponential | geometric_survival
  nlohmann::json params;
};

struct VerifySpec {
  std::string channel;
  OracleSpec oracle;
  double tol = 0.0;
};

// Parsed and schema-checked run configuration. The scenario/integration/
// output sections stay as validated JSON; scenario assembly interprets them.
struct RunConfig {
  int schema_version = kSchemaVersion;
  nlohmann::json scenario;
  nlohmann::json integration;
  nlohmann::json output;
  std::optional<VerifySpec> verify;
  nlohmann::json raw;
};

// Throws ConfigError with the offending field path on schema violations.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Evaluate a named oracle at time t. Throws ConfigError for unknown names
// or malformed parameters.
double oracle_value(const OracleSpec& spec, double t);

}  // namespace lrsim
