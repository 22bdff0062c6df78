#include "lrsim/config.hpp"

#include <cmath>
#include <fstream>

#include "lrsim/errors.hpp"
#include "lrsim/oracles.hpp"

namespace lrsim {

namespace {

const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                    const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError("missing field: " + path + "." + key);
  return j[key];
}

double require_number(const nlohmann::json& j, const std::string& key,
                      const std::string& path) {
  const nlohmann::json& v = require_field(j, key, path);
  if (!v.is_number())
    throw ConfigError("field must be a number: " + path + "." + key);
  return v.get<double>();
}

std::string require_string(const nlohmann::json& j, const std::string& key,
                           const std::string& path) {
  const nlohmann::json& v = require_field(j, key, path);
  if (!v.is_string())
    throw ConfigError("field must be a string: " + path + "." + key);
  return v.get<std::string>();
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  RunConfig cfg;
  cfg.raw = j;
  const double version = require_number(j, "schema_version", "");
  if (version != kSchemaVersion)
    throw ConfigError("schema_version: expected " + std::to_string(kSchemaVersion));
  cfg.scenario = require_field(j, "scenario", "");
  const std::string kind = require_string(cfg.scenario, "kind", "scenario");
  if (kind != "internal_coherence" && kind != "kick_decoherence" &&
      kind != "bloch_boltzmann")
    throw ConfigError("scenario.kind: unknown scenario '" + kind + "'");

  cfg.integration = require_field(j, "integration", "");
  const double t_start = cfg.integration.contains("t_start")
                             ? require_number(cfg.integration, "t_start", "integration")
                             : 0.0;
  const double t_end = require_number(cfg.integration, "t_end", "integration");
  if (!(t_end > t_start))
    throw ConfigError("integration.t_end: must be greater than integration.t_start");
  const bool adaptive = cfg.integration.value("adaptive", false);
  if (adaptive) {
    if (cfg.integration.contains("rtol") &&
        !(require_number(cfg.integration, "rtol", "integration") > 0.0))
      throw ConfigError("integration.rtol: must be > 0");
    if (cfg.integration.contains("atol") &&
        !(require_number(cfg.integration, "atol", "integration") > 0.0))
      throw ConfigError("integration.atol: must be > 0");
  } else if (cfg.integration.contains("dt")) {
    if (!(require_number(cfg.integration, "dt", "integration") > 0.0))
      throw ConfigError("integration.dt: must be > 0");
  } else {
    const double steps = require_number(cfg.integration, "steps", "integration");
    if (!(steps > 0.0) || steps != std::floor(steps))
      throw ConfigError("integration.steps: must be a positive integer");
  }

  cfg.output = j.contains("output") ? j["output"] : nlohmann::json::object();
  if (!cfg.output.is_object()) throw ConfigError("output: must be an object");

  if (j.contains("verify")) {
    const nlohmann::json& v = j["verify"];
    VerifySpec spec;
    spec.channel = v.value("channel", std::string{});
    spec.oracle.name = require_string(v, "oracle", "verify");
    spec.oracle.params = v.contains("params") ? v["params"] : nlohmann::json::object();
    spec.tol = require_number(v, "tol", "verify");
    if (spec.tol < 0.0) throw ConfigError("verify.tol: must be >= 0");
    // fail fast on unknown oracle names / bad parameters
    oracle_value(spec.oracle, 0.0);
    cfg.verify = std::move(spec);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_run_config(j);
}

namespace {

std::vector<double> number_list(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError("field must be an array: " + path);
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError("field must hold numbers: " + path);
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

double oracle_value(const OracleSpec& spec, double t) {
  const nlohmann::json& p = spec.params;
  if (spec.name == "power_law")
    return lambda_power_law(t, require_number(p, "tau", "verify.params"));
  if (spec.name == "stretched")
    return lambda_stretched(t, require_number(p, "tau", "verify.params"));
  if (spec.name == "exponential")
    return std::exp(-require_number(p, "rate", "verify.params") * t);
  if (spec.name == "multiexponential") {
    const std::vector<double> w =
        number_list(require_field(p, "weights", "verify.params"), "verify.params.weights");
    const std::vector<double> r =
        number_list(require_field(p, "rates", "verify.params"), "verify.params.rates");
    if (w.size() != r.size())
      throw ConfigError("verify.params: weights and rates must have equal length");
    return psi_multiexponential(t, w, r);
  }
  if (spec.name == "geometric_survival") {
    const GeometricFamily fam = GeometricFamily::make(
        require_number(p, "a", "verify.params"), require_number(p, "b", "verify.params"),
        require_number(p, "lambda0", "verify.params"));
    return psi_multiexponential(t, fam.weights, fam.rates);
  }
  throw ConfigError("verify.oracle: unknown oracle '" + spec.name + "'");
}

}  // namespace lrsim
