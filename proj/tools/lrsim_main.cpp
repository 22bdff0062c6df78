#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>

#include "lrsim/config.hpp"
#include "lrsim/errors.hpp"
#include "lrsim/runner.hpp"
#include "lrsim/timeseries.hpp"

namespace {

std::string output_dir_override(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("LRSIM_OUTPUT_DIR")) return env;
  return {};
}

// --params entries "key=value"; value is a number or a semicolon list
nlohmann::json parse_params(const std::vector<std::string>& entries) {
  nlohmann::json params = nlohmann::json::object();
  for (const std::string& e : entries) {
    const std::size_t eq = e.find('=');
    if (eq == std::string::npos)
      throw lrsim::ConfigError("--params entries must look like key=value: " + e);
    const std::string key = e.substr(0, eq);
    const std::string value = e.substr(eq + 1);
    if (value.find(';') == std::string::npos) {
      params[key] = std::stod(value);
    } else {
      nlohmann::json arr = nlohmann::json::array();
      std::size_t start = 0;
      while (start <= value.size()) {
        const std::size_t pos = value.find(';', start);
        const std::string tok = value.substr(
            start, pos == std::string::npos ? std::string::npos : pos - start);
        if (!tok.empty()) arr.push_back(std::stod(tok));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
      params[key] = std::move(arr);
    }
  }
  return params;
}

// "a:b:n"
void parse_range(const std::string& text, double& from, double& to, int& count) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw lrsim::ConfigError("--range must look like a:b:n");
  from = std::stod(text.substr(0, c1));
  to = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  count = std::stoi(text.substr(c2 + 1));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Lindblad rate-equation simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "config file (JSON)")->required();
  run->add_option("--out-dir", out_dir, "redirect output files");

  std::string csv_path, oracle_name, channel;
  std::vector<std::string> param_entries;
  double tol = 0.0;
  auto* verify = app.add_subcommand("verify", "check a CSV against an oracle");
  verify->add_option("csv", csv_path, "series CSV file")->required();
  verify->add_option("--oracle", oracle_name, "oracle name")->required();
  verify->add_option("--params", param_entries, "oracle parameters key=value");
  verify->add_option("--tol", tol, "max relative deviation")->required();
  verify->add_option("--channel", channel, "channel to compare (default: first)");

  std::string axis, range;
  auto* sweep = app.add_subcommand("sweep", "run a scenario over a parameter axis");
  sweep->add_option("config", config_path, "config file (JSON)")->required();
  sweep->add_option("--axis", axis, "dot path of a numeric config field")->required();
  sweep->add_option("--range", range, "a:b:n inclusive range")->required();
  sweep->add_option("--out-dir", out_dir, "redirect output files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const lrsim::RunConfig cfg = lrsim::load_run_config(config_path);
      const lrsim::RunOutcome out =
          lrsim::run_scenario(cfg, output_dir_override(out_dir));
      std::cout << "wrote " << out.csv_path << " and " << out.report_path << "\n";
      if (out.report.contains("verify")) {
        const auto& v = out.report["verify"];
        std::cout << "verify " << v["oracle"].get<std::string>() << ": max rel dev "
                  << v["max_rel_dev"].get<double>() << " (tol "
                  << v["tol"].get<double>() << ") -> "
                  << (v["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
      return out.exit_code;
    }
    if (verify->parsed()) {
      const lrsim::TimeSeries series = lrsim::read_csv(csv_path);
      lrsim::OracleSpec spec{oracle_name, parse_params(param_entries)};
      const lrsim::VerifyReport rep =
          lrsim::verify_series(series, channel, spec, tol);
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.pass ? 0 : 2;
    }
    if (sweep->parsed()) {
      double from = 0.0, to = 0.0;
      int count = 0;
      parse_range(range, from, to, count);
      const lrsim::RunConfig cfg = lrsim::load_run_config(config_path);
      const lrsim::SweepOutcome out = lrsim::run_sweep(
          cfg, axis, from, to, count, output_dir_override(out_dir));
      std::cout << "wrote " << out.report_path << "\n";
      return out.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
