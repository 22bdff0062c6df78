#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "lrsim/config.hpp"
#include "lrsim/timeseries.hpp"

namespace lrsim {

struct VerifyReport {
  std::string channel;
  std::string oracle;
  double tol = 0.0;
  double max_abs_dev = 0.0;
  double max_rel_dev = 0.0;
  double argmax_time = 0.0;
  bool pass = false;

  [[nodiscard]] nlohmann::json to_json() const;
};

// Pointwise comparison of a series channel against a named oracle. Relative
// deviations are measured against the oracle value; pass if max relative
// deviation <= tol.
VerifyReport verify_series(const TimeSeries& series, const std::string& channel,
                           const OracleSpec& oracle, double tol);

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 2 verify failure
  std::string csv_path;
  std::string report_path;
  TimeSeries series;
  nlohmann::json report;
};

// Execute the configured scenario and write the CSV + JSON report. A
// non-empty out_dir redirects the output files there (set from the CLI flag
// or the LRSIM_OUTPUT_DIR environment variable).
RunOutcome run_scenario(const RunConfig& cfg, const std::string& out_dir = {});

struct SweepOutcome {
  int exit_code = 0;
  std::string report_path;
  nlohmann::json report;
};

// One run per axis value (count values linearly spaced on [from, to]),
// deterministic ordering, aggregate report with per-value verify summaries
// and curve metrics.
SweepOutcome run_sweep(const RunConfig& base, const std::string& axis, double from,
                       double to, int count, const std::string& out_dir = {});

}  // namespace lrsim
