#include "lrsim/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lrsim/errors.hpp"
#include "lrsim/integrator.hpp"
#include "lrsim/kahan.hpp"
#include "lrsim/oracles.hpp"
#include "lrsim/scenarios.hpp"

namespace lrsim {

namespace {

namespace fs = std::filesystem;

double number_at(const nlohmann::json& j, const std::string& key,
                 const std::string& path, std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("missing field: " + path + "." + key);
  }
  if (!j[key].is_number())
    throw ConfigError("field must be a number: " + path + "." + key);
  return j[key].get<double>();
}

int int_at(const nlohmann::json& j, const std::string& key, const std::string& path,
           std::optional<int> fallback = {}) {
  const double v = number_at(j, key, path,
                             fallback ? std::optional<double>(*fallback) : std::nullopt);
  if (v != std::floor(v)) throw ConfigError("field must be an integer: " + path + "." + key);
  return static_cast<int>(v);
}

GasParameters parse_gas(const nlohmann::json& scenario) {
  if (!scenario.contains("gas")) throw ConfigError("missing field: scenario.gas");
  const nlohmann::json& g = scenario["gas"];
  GasParameters gas;
  gas.m = number_at(g, "m", "scenario.gas");
  gas.M = number_at(g, "M", "scenario.gas");
  gas.n_gas = number_at(g, "n_gas", "scenario.gas", 1.0);
  gas.beta = number_at(g, "beta", "scenario.gas");
  gas.check();
  return gas;
}

Eigen::MatrixXcd parse_complex_matrix(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ConfigError("field must be a complex matrix [[re,im],...]: " + path);
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols)
      throw ConfigError("ragged matrix: " + path);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (!e.is_array() || e.size() != 2)
        throw ConfigError("matrix entries must be [re, im]: " + path);
      m(r, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

FrictionSpec parse_friction(const nlohmann::json& scenario) {
  if (!scenario.contains("friction"))
    throw ConfigError("missing field: scenario.friction");
  const nlohmann::json& f = scenario["friction"];
  const std::string form = f.value("form", std::string{});
  if (form == "constant") return FrictionSpec::constant(number_at(f, "eta", "scenario.friction"));
  if (form == "uniform") return FrictionSpec::uniform(number_at(f, "eta", "scenario.friction"));
  if (form == "quadratic") return FrictionSpec::quadratic(number_at(f, "a", "scenario.friction"));
  if (form == "inverse_quadratic")
    return FrictionSpec::inverse_quadratic(number_at(f, "b", "scenario.friction"));
  throw ConfigError("scenario.friction.form: unknown form '" + form + "'");
}

RadialQuadratureSpec parse_grid(const nlohmann::json& scenario) {
  RadialQuadratureSpec spec;
  if (!scenario.contains("grid")) return spec;
  const nlohmann::json& g = scenario["grid"];
  spec.order = int_at(g, "points", "scenario.grid", 64);
  if (spec.order < 1) throw ConfigError("scenario.grid.points: must be >= 1");
  const std::string rule = g.value("rule", std::string("radial_jacobi"));
  if (rule == "radial_jacobi")
    spec.kind = RadialRuleKind::jacobi_truncated;
  else if (rule == "radial_laguerre")
    spec.kind = RadialRuleKind::laguerre_half;
  else
    throw ConfigError("scenario.grid.rule: unknown rule '" + rule + "'");
  spec.u_max = number_at(g, "u_max", "scenario.grid", 21.0);
  return spec;
}

Eigen::MatrixXcd parse_sigma(const nlohmann::json& scenario, int n) {
  if (scenario.contains("preparation") && scenario["preparation"].contains("sigma"))
    return parse_complex_matrix(scenario["preparation"]["sigma"],
                                "scenario.preparation.sigma");
  // default preparation: the fully coherent pure state (all entries 1/n)
  return Eigen::MatrixXcd::Constant(n, n, std::complex<double>(1.0 / n, 0.0));
}

struct ChannelSpec {
  std::string name;
  std::string kind;
  int i = 0, j = 0, alpha = 0;
  bool normalize = false;
  bool abs = false;
};

std::vector<ChannelSpec> parse_channels(const nlohmann::json& output,
                                        std::vector<ChannelSpec> defaults) {
  if (!output.contains("channels")) return defaults;
  const nlohmann::json& arr = output["channels"];
  if (!arr.is_array()) throw ConfigError("output.channels: must be an array");
  std::vector<ChannelSpec> out;
  for (const auto& c : arr) {
    ChannelSpec spec;
    spec.name = c.value("name", std::string{});
    spec.kind = c.value("kind", std::string{});
    if (spec.name.empty() || spec.kind.empty())
      throw ConfigError("output.channels: entries need name and kind");
    spec.i = c.value("i", 0);
    spec.j = c.value("j", 0);
    spec.alpha = c.value("alpha", 0);
    spec.normalize = c.value("normalize", false);
    spec.abs = c.value("abs", false);
    out.push_back(std::move(spec));
  }
  return out;
}

Observer make_observer(const ChannelSpec& spec) {
  if (spec.kind == "marginal_element")
    return Observer::marginal_element(spec.name, spec.i, spec.j);
  if (spec.kind == "block_element")
    return Observer::block_element(spec.name, spec.alpha, spec.i, spec.j);
  if (spec.kind == "label_weight")
    return Observer::label_weight(spec.name, spec.alpha);
  if (spec.kind == "total_trace") return Observer::total_trace(spec.name);
  throw ConfigError("output.channels: unknown kind '" + spec.kind + "'");
}

// normalize/abs post-processing of raw observer samples
TimeSeries postprocess(TimeSeries raw, const std::vector<ChannelSpec>& specs) {
  for (std::size_t c = 0; c < specs.size(); ++c) {
    Channel& ch = raw.channels[c];
    if (specs[c].normalize) {
      const std::complex<double> first = ch.samples.front();
      if (std::abs(first) == 0.0)
        throw IntegrationError("channel '" + ch.name + "': cannot normalize by zero");
      for (auto& z : ch.samples) z /= first;
    }
    if (specs[c].abs) {
      for (auto& z : ch.samples) z = std::abs(z);
      ch.is_real = true;
    }
  }
  return raw;
}

EvolutionConfig parse_integration(const nlohmann::json& integration,
                                  std::vector<Observer> observers) {
  EvolutionConfig ec;
  ec.t_start = number_at(integration, "t_start", "integration", 0.0);
  ec.t_end = number_at(integration, "t_end", "integration");
  ec.adaptive = integration.value("adaptive", false);
  if (ec.adaptive) {
    ec.rtol = number_at(integration, "rtol", "integration", 1e-8);
    ec.atol = number_at(integration, "atol", "integration", 1e-10);
  } else if (integration.contains("dt")) {
    ec.dt = number_at(integration, "dt", "integration");
  } else {
    ec.steps = int_at(integration, "steps", "integration");
  }
  ec.invariant_check_every = int_at(integration, "invariant_check_every", "integration", 16);
  ec.observers = std::move(observers);
  return ec;
}

nlohmann::json invariants_to_json(const InvariantSummary& inv) {
  return {{"initial_trace", inv.initial_trace},
          {"max_trace_drift", inv.max_trace_drift},
          {"max_negativity", inv.max_negativity},
          {"max_herm_defect", inv.max_herm_defect}};
}

// first time the channel crosses 2^{-3/2} (linear interpolation); the
// power-law reference-time probe used in sweep reports
std::optional<double> tau_crossing(const TimeSeries& series, const std::string& channel) {
  const Channel* ch = series.find(channel);
  if (!ch) return std::nullopt;
  const double level = std::pow(2.0, -1.5);
  for (std::size_t k = 1; k < series.times.size(); ++k) {
    const double a = std::abs(ch->samples[k - 1]);
    const double b = std::abs(ch->samples[k]);
    if (a >= level && b < level) {
      const double f = (a - level) / (a - b);
      return series.times[k - 1] + f * (series.times[k] - series.times[k - 1]);
    }
  }
  return std::nullopt;
}

// log-log slope over the trailing two decades of positive samples
std::optional<double> tail_slope(const TimeSeries& series, const std::string& channel) {
  const Channel* ch = series.find(channel);
  if (!ch || series.times.empty()) return std::nullopt;
  const double t_hi = series.times.back();
  const double t_lo = t_hi / 100.0;
  std::vector<double> ts, vs;
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double v = std::abs(ch->samples[k]);
    if (series.times[k] >= t_lo && series.times[k] > 0.0 && v > 0.0) {
      ts.push_back(series.times[k]);
      vs.push_back(v);
    }
  }
  if (ts.size() < 8) return std::nullopt;
  return loglog_slope(ts, vs);
}

struct ScenarioResult {
  TimeSeries series;
  nlohmann::json invariants;  // null when not applicable
  long accepted_steps = 0;
};

ScenarioResult run_internal_coherence(const RunConfig& cfg) {
  const nlohmann::json& sc = cfg.scenario;
  const GasParameters gas = parse_gas(sc);
  const FrictionSpec friction = parse_friction(sc);
  const RadialQuadratureSpec quad = parse_grid(sc);
  const RadialThermalRule rule =
      radial_thermal_rule(quad.order, gas.p_beta(), quad.kind, quad.u_max);
  const LabelSpace space = radial_thermal_space(rule, gas);
  const Eigen::MatrixXcd sigma = parse_sigma(sc, friction.levels());
  const BlockDiagonalState state0 = thermal_radial_state(space, gas, sigma);
  const GeneralizedLindbladGenerator gen =
      build_internal_coherence_generator(friction, space);

  std::vector<ChannelSpec> defaults{
      {"coherence", "marginal_element", 0, 1, 0, true, true},
      {"trace", "total_trace", 0, 0, 0, false, false}};
  const std::vector<ChannelSpec> specs = parse_channels(cfg.output, defaults);
  std::vector<Observer> observers;
  for (const ChannelSpec& s : specs) observers.push_back(make_observer(s));

  const EvolveResult res = evolve(gen, state0, parse_integration(cfg.integration,
                                                                 std::move(observers)));
  return {postprocess(res.series, specs), invariants_to_json(res.invariants),
          res.accepted_steps};
}

KickDensity parse_density(const nlohmann::json& j, const std::string& path) {
  const std::string form = j.value("form", std::string{});
  if (form == "gaussian")
    return KickDensity::isotropic_gaussian(number_at(j, "sigma", path));
  if (form == "far_field") return KickDensity::far_field();
  if (form == "discrete") {
    if (!j.contains("atoms") || !j["atoms"].is_array())
      throw ConfigError(path + ".atoms: required array of {Q, p}");
    std::vector<std::pair<Eigen::Vector3d, double>> atoms;
    for (const auto& a : j["atoms"]) {
      const auto& q = a.at("Q");
      atoms.emplace_back(
          Eigen::Vector3d(q[0].get<double>(), q[1].get<double>(), q[2].get<double>()),
          a.at("p").get<double>());
    }
    return KickDensity::discrete_mixture(std::move(atoms));
  }
  throw ConfigError(path + ".form: unknown density form '" + form + "'");
}

ScenarioResult run_kick_decoherence(const RunConfig& cfg) {
  const nlohmann::json& sc = cfg.scenario;
  Eigen::Vector3d d(0.0, 0.0, 0.0);
  if (sc.contains("separation")) {
    const auto& s = sc["separation"];
    if (!s.is_array() || s.size() != 3)
      throw ConfigError("scenario.separation: must be a 3-vector");
    d = Eigen::Vector3d(s[0].get<double>(), s[1].get<double>(), s[2].get<double>());
  }

  std::vector<double> weights;
  std::vector<KickChannel> channels;
  if (sc.contains("geometric")) {
    const nlohmann::json& g = sc["geometric"];
    const GeometricFamily fam = GeometricFamily::make(
        number_at(g, "a", "scenario.geometric"), number_at(g, "b", "scenario.geometric"),
        number_at(g, "lambda0", "scenario.geometric"));
    weights = fam.weights;
    for (double rate : fam.rates)
      channels.push_back(KickChannel{rate, KickDensity::far_field()});
  } else {
    if (!sc.contains("kicks") || !sc["kicks"].contains("channels"))
      throw ConfigError("missing field: scenario.kicks.channels");
    int idx = 0;
    for (const auto& c : sc["kicks"]["channels"]) {
      const std::string path = "scenario.kicks.channels[" + std::to_string(idx++) + "]";
      KickChannel ch;
      ch.rate = number_at(c, "rate", path);
      ch.density = parse_density(c.contains("density") ? c["density"]
                                                       : nlohmann::json{{"form", "far_field"}},
                                 path + ".density");
      channels.push_back(std::move(ch));
    }
    if (!sc.contains("preparation") || !sc["preparation"].contains("weights"))
      throw ConfigError("missing field: scenario.preparation.weights");
    for (const auto& w : sc["preparation"]["weights"]) weights.push_back(w.get<double>());
  }
  if (weights.size() != channels.size())
    throw ConfigError("scenario: preparation weights and kick channels differ in count");

  const PreparationSpec prep = PreparationSpec::label_weights(weights);
  const KickSpec kicks = KickSpec::diagonal(channels);
  const Eigen::MatrixXcd a = build_kick_coherence_ode(d, kicks);

  const double t_start = number_at(cfg.integration, "t_start", "integration", 0.0);
  const double t_end = number_at(cfg.integration, "t_end", "integration");
  const int steps = int_at(cfg.integration, "steps", "integration", 256);
  std::vector<double> t_grid(steps + 1);
  for (int k = 0; k <= steps; ++k)
    t_grid[k] = t_start + (t_end - t_start) * k / static_cast<double>(steps);

  Eigen::VectorXcd c0(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t r = 0; r < weights.size(); ++r)
    c0[static_cast<Eigen::Index>(r)] = weights[r];
  const std::vector<Eigen::VectorXcd> traj = evolve_linear(a, c0, t_grid);

  TimeSeries series;
  series.times = t_grid;
  Channel vis{"visibility", true, {}};
  Channel coh{"coherence", false, {}};
  const std::complex<double> first = traj.front().sum();
  for (const auto& c : traj) {
    const std::complex<double> z = c.sum() / first;
    vis.samples.emplace_back(std::abs(z), 0.0);
    coh.samples.push_back(z);
  }
  series.channels.push_back(std::move(vis));
  series.channels.push_back(std::move(coh));
  return {std::move(series), nlohmann::json(), static_cast<long>(steps)};
}

ScenarioResult run_bloch_boltzmann(const RunConfig& cfg) {
  const nlohmann::json& sc = cfg.scenario;
  const GasParameters gas = parse_gas(sc);
  if (!sc.contains("levels") || !sc["levels"].contains("omega"))
    throw ConfigError("missing field: scenario.levels.omega");
  Eigen::VectorXd omega(sc["levels"]["omega"].size());
  for (Eigen::Index k = 0; k < omega.size(); ++k)
    omega[k] = sc["levels"]["omega"][k].get<double>();
  const InternalLevels levels(omega);

  if (!sc.contains("amplitude")) throw ConfigError("missing field: scenario.amplitude");
  const nlohmann::json& am = sc["amplitude"];
  const std::string family = am.value("family", std::string{});
  std::optional<ScatteringAmplitude> amp;
  if (family == "elastic_constant") {
    const auto& f0 = am.at("f0");
    amp = ScatteringAmplitude::elastic_constant(
        levels.n(), {f0[0].get<double>(), f0[1].get<double>()});
  } else if (family == "constant") {
    amp = ScatteringAmplitude::constant(
        parse_complex_matrix(am.at("matrix"), "scenario.amplitude.matrix"));
  } else if (family == "gaussian_envelope") {
    amp = ScatteringAmplitude::gaussian_envelope(
        parse_complex_matrix(am.at("matrix"), "scenario.amplitude.matrix"),
        number_at(am, "width", "scenario.amplitude"));
  } else if (family == "separable") {
    amp = ScatteringAmplitude::separable(
        parse_complex_matrix(am.at("matrix"), "scenario.amplitude.matrix"),
        number_at(am, "width", "scenario.amplitude"));
  } else {
    throw ConfigError("scenario.amplitude.family: unknown family '" + family + "'");
  }

  if (!sc.contains("lattice")) throw ConfigError("missing field: scenario.lattice");
  const nlohmann::json& lat = sc["lattice"];
  const int count = int_at(lat, "count", "scenario.lattice");
  const double spacing = number_at(lat, "spacing", "scenario.lattice");
  const int transfer_steps = int_at(lat, "transfer_steps", "scenario.lattice", 1);
  if (transfer_steps < 1 || transfer_steps >= count)
    throw ConfigError("scenario.lattice.transfer_steps: must be in [1, count)");
  const LabelSpace space = lattice_space_1d(count, spacing);

  std::vector<Eigen::Vector3d> p_list;
  for (std::size_t k = 0; k < space.size(); ++k) p_list.push_back(space.coordinate(k));
  std::vector<Eigen::Vector3d> q_list;
  for (int s = 1; s <= transfer_steps; ++s) {
    q_list.emplace_back(0.0, 0.0, s * spacing);
    q_list.emplace_back(0.0, 0.0, -s * spacing);
  }
  const int quad_order = int_at(sc, "quad_order", "scenario", 16);
  const RateCoefficientTable table =
      RateCoefficientTable::compute(gas, levels, *amp, p_list, q_list, quad_order);
  const GeneralizedLindbladGenerator gen =
      build_bloch_boltzmann_generator(space, table, levels);

  const Eigen::MatrixXcd sigma = parse_sigma(sc, levels.n());
  const std::string dist =
      sc.contains("preparation")
          ? sc["preparation"].value("label_distribution", std::string("thermal_test"))
          : std::string("thermal_test");
  std::vector<Eigen::MatrixXcd> blocks(space.size());
  KahanReal norm;
  for (std::size_t k = 0; k < space.size(); ++k) {
    const Eigen::Vector3d& p = space.coordinate(k);
    double g;
    if (dist == "thermal_test")
      g = std::exp(-gas.beta * p.squaredNorm() / (2.0 * gas.M));
    else if (dist == "thermal_gas")
      g = maxwell_boltzmann(p, gas);
    else
      throw ConfigError("scenario.preparation.label_distribution: unknown '" + dist + "'");
    norm.add(space.weight(k) * g);
    blocks[k] = g * sigma;
  }
  for (auto& b : blocks) b /= norm.value();
  const BlockDiagonalState state0(space, std::move(blocks));

  std::vector<ChannelSpec> defaults{
      {"trace", "total_trace", 0, 0, 0, false, false},
      {"population_0", "marginal_element", 0, 0, 0, false, true}};
  if (levels.n() >= 2)
    defaults.push_back({"coherence", "marginal_element", 0, 1, 0, true, true});
  const std::vector<ChannelSpec> specs = parse_channels(cfg.output, defaults);
  std::vector<Observer> observers;
  for (const ChannelSpec& s : specs) observers.push_back(make_observer(s));

  const EvolveResult res =
      evolve(gen, state0, parse_integration(cfg.integration, std::move(observers)));
  return {postprocess(res.series, specs), invariants_to_json(res.invariants),
          res.accepted_steps};
}

}  // namespace

nlohmann::json VerifyReport::to_json() const {
  return {{"channel", channel},   {"oracle", oracle},
          {"tol", tol},           {"max_abs_dev", max_abs_dev},
          {"max_rel_dev", max_rel_dev}, {"argmax_time", argmax_time},
          {"pass", pass}};
}

VerifyReport verify_series(const TimeSeries& series, const std::string& channel,
                           const OracleSpec& oracle, double tol) {
  const Channel* ch = nullptr;
  if (channel.empty()) {
    if (series.channels.empty()) throw ConfigError("verify: series has no channels");
    ch = &series.channels.front();
  } else {
    ch = series.find(channel);
    if (!ch) throw ConfigError("verify: unknown channel '" + channel + "'");
  }
  if (ch->samples.size() != series.times.size())
    throw ConfigError("verify: channel/time length mismatch");

  VerifyReport rep;
  rep.channel = ch->name;
  rep.oracle = oracle.name;
  rep.tol = tol;
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double value = ch->is_real ? ch->samples[k].real() : std::abs(ch->samples[k]);
    const double ref = oracle_value(oracle, series.times[k]);
    const double abs_dev = std::abs(value - ref);
    const double rel_dev = abs_dev / std::max(std::abs(ref), 1e-14);
    if (rel_dev > rep.max_rel_dev) {
      rep.max_rel_dev = rel_dev;
      rep.argmax_time = series.times[k];
    }
    rep.max_abs_dev = std::max(rep.max_abs_dev, abs_dev);
  }
  rep.pass = rep.max_rel_dev <= tol;
  return rep;
}

namespace {

std::string redirect_path(const std::string& configured, const std::string& out_dir) {
  if (out_dir.empty()) return configured;
  return (fs::path(out_dir) / fs::path(configured).filename()).string();
}

void ensure_parent(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

}  // namespace

RunOutcome run_scenario(const RunConfig& cfg, const std::string& out_dir) {
  const std::string kind = cfg.scenario.at("kind").get<std::string>();
  ScenarioResult sr;
  if (kind == "internal_coherence")
    sr = run_internal_coherence(cfg);
  else if (kind == "kick_decoherence")
    sr = run_kick_decoherence(cfg);
  else
    sr = run_bloch_boltzmann(cfg);

  RunOutcome out;
  out.series = std::move(sr.series);
  out.csv_path = redirect_path(cfg.output.value("csv", kind + ".csv"), out_dir);
  out.report_path =
      redirect_path(cfg.output.value("report", kind + "_report.json"), out_dir);

  nlohmann::json report;
  report["schema_version"] = kSchemaVersion;
  report["scenario"] = kind;
  report["config"] = cfg.raw;
  report["invariants"] = sr.invariants;
  report["accepted_steps"] = sr.accepted_steps;

  nlohmann::json metrics;
  const std::string probe = out.series.channels.empty()
                                ? std::string{}
                                : out.series.channels.front().name;
  const std::string metric_channel =
      cfg.verify && !cfg.verify->channel.empty() ? cfg.verify->channel : probe;
  if (const auto tc = tau_crossing(out.series, metric_channel))
    metrics["tau_crossing"] = *tc;
  if (const auto sl = tail_slope(out.series, metric_channel))
    metrics["loglog_slope_tail"] = *sl;
  report["metrics"] = metrics;

  if (cfg.verify) {
    const VerifyReport vr =
        verify_series(out.series, cfg.verify->channel, cfg.verify->oracle, cfg.verify->tol);
    report["verify"] = vr.to_json();
    if (!vr.pass) out.exit_code = 2;
  }

  ensure_parent(out.csv_path);
  write_csv(out.series, out.csv_path);
  ensure_parent(out.report_path);
  std::ofstream rf(out.report_path);
  if (!rf) throw StructuralError("run: cannot open report path " + out.report_path);
  rf << report.dump(2) << "\n";
  out.report = std::move(report);
  return out;
}

SweepOutcome run_sweep(const RunConfig& base, const std::string& axis, double from,
                       double to, int count, const std::string& out_dir) {
  if (count < 1) throw ConfigError("sweep: count must be >= 1");
  // resolve the dot path and require a numeric leaf
  std::vector<std::string> keys;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = axis.find('.', start);
    if (pos == std::string::npos) {
      keys.push_back(axis.substr(start));
      break;
    }
    keys.push_back(axis.substr(start, pos - start));
    start = pos + 1;
  }
  {
    const nlohmann::json* node = &base.raw;
    for (const std::string& k : keys) {
      if (!node->is_object() || !node->contains(k))
        throw ConfigError("sweep: axis path not found: " + axis);
      node = &(*node)[k];
    }
    if (!node->is_number()) throw ConfigError("sweep: axis is not numeric: " + axis);
  }

  SweepOutcome out;
  nlohmann::json runs = nlohmann::json::array();
  const std::string csv_base = base.output.value("csv", std::string("sweep.csv"));
  for (int k = 0; k < count; ++k) {
    const double value =
        count == 1 ? from : from + (to - from) * k / static_cast<double>(count - 1);
    nlohmann::json modified = base.raw;
    nlohmann::json* node = &modified;
    for (std::size_t ki = 0; ki + 1 < keys.size(); ++ki) node = &(*node)[keys[ki]];
    (*node)[keys.back()] = value;

    const fs::path cp(csv_base);
    const std::string suffix = "_s" + std::to_string(k);
    modified["output"]["csv"] =
        (cp.parent_path() / (cp.stem().string() + suffix + cp.extension().string()))
            .string();
    const fs::path rp(base.output.value("report", std::string("sweep_report.json")));
    modified["output"]["report"] =
        (rp.parent_path() / (rp.stem().string() + suffix + rp.extension().string()))
            .string();

    const RunConfig cfg = parse_run_config(modified);
    const RunOutcome ro = run_scenario(cfg, out_dir);
    nlohmann::json entry;
    entry["value"] = value;
    entry["csv"] = ro.csv_path;
    entry["metrics"] = ro.report["metrics"];
    if (ro.report.contains("verify")) entry["verify"] = ro.report["verify"];
    runs.push_back(std::move(entry));
    out.exit_code = std::max(out.exit_code, ro.exit_code);
  }
  out.report = {{"schema_version", kSchemaVersion},
                {"axis", axis},
                {"from", from},
                {"to", to},
                {"count", count},
                {"runs", std::move(runs)}};
  const std::string rep_base =
      base.output.value("report", std::string("sweep_report.json"));
  const fs::path rp(rep_base);
  out.report_path = redirect_path(
      (rp.parent_path() / (rp.stem().string() + "_sweep" + rp.extension().string()))
          .string(),
      out_dir);
  ensure_parent(out.report_path);
  std::ofstream rf(out.report_path);
  if (!rf) throw StructuralError("sweep: cannot open report path " + out.report_path);
  rf << out.report.dump(2) << "\n";
  return out;
}

}  // namespace lrsim
