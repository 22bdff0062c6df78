#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "lrsim/block_state.hpp"
#include "lrsim/config.hpp"
#include "lrsim/gas.hpp"
#include "lrsim/generator.hpp"
#include "lrsim/integrator.hpp"
#include "lrsim/oracles.hpp"
#include "lrsim/quadrature.hpp"
#include "lrsim/runner.hpp"
#include "lrsim/scenarios.hpp"

namespace py = pybind11;
using namespace lrsim;

namespace {

py::dict series_to_dict(const TimeSeries& series) {
  py::dict out;
  out["t"] = series.times;
  for (const Channel& c : series.channels) {
    if (c.is_real) {
      std::vector<double> v(c.samples.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = c.samples[k].real();
      out[c.name.c_str()] = v;
    } else {
      out[c.name.c_str()] = c.samples;
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "generalized Lindblad rate-equation simulator";

  // ---- gas physics -------------------------------------------------------
  py::class_<GasParameters>(m, "GasParameters")
      .def(py::init([](double mass_gas, double mass_test, double n_gas, double beta) {
             GasParameters g;
             g.m = mass_gas;
             g.M = mass_test;
             g.n_gas = n_gas;
             g.beta = beta;
             g.check();
             return g;
           }),
           py::arg("m"), py::arg("M"), py::arg("n_gas"), py::arg("beta"))
      .def_readwrite("m", &GasParameters::m)
      .def_readwrite("M", &GasParameters::M)
      .def_readwrite("n_gas", &GasParameters::n_gas)
      .def_readwrite("beta", &GasParameters::beta)
      .def_property_readonly("m_star", &GasParameters::m_star)
      .def_property_readonly("p_beta", &GasParameters::p_beta);

  py::class_<InternalLevels>(m, "InternalLevels")
      .def(py::init<Eigen::VectorXd>(), py::arg("omega"))
      .def_property_readonly("n", &InternalLevels::n)
      .def("epsilon", &InternalLevels::epsilon)
      .def("basis_map", &InternalLevels::basis_map);

  py::class_<ScatteringAmplitude>(m, "ScatteringAmplitude")
      .def_static("constant", &ScatteringAmplitude::constant)
      .def_static("elastic_constant", &ScatteringAmplitude::elastic_constant)
      .def_static("gaussian_envelope", &ScatteringAmplitude::gaussian_envelope)
      .def_static("separable", &ScatteringAmplitude::separable)
      .def("__call__", &ScatteringAmplitude::operator());

  m.def("maxwell_boltzmann", &maxwell_boltzmann, py::arg("p"), py::arg("gas"));
  m.def("maxwell_boltzmann_2d", &maxwell_boltzmann_2d, py::arg("p_perp"), py::arg("gas"));
  m.def("rel", &rel, py::arg("p"), py::arg("P"), py::arg("gas"));
  m.def("energy_transfer", &energy_transfer, py::arg("Q"), py::arg("P"), py::arg("gas"));
  m.def("dynamic_structure_factor", &dynamic_structure_factor, py::arg("Q"),
        py::arg("E"), py::arg("gas"));
  m.def("sdf_identity_residual", &sdf_identity_residual, py::arg("p_perp"),
        py::arg("Q"), py::arg("P"), py::arg("eps_ij"), py::arg("gas"));
  m.def("sdf_identity_relative_residual", &sdf_identity_relative_residual,
        py::arg("p_perp"), py::arg("Q"), py::arg("P"), py::arg("eps_ij"),
        py::arg("gas"));
  m.def("rate_coefficient", &rate_coefficient, py::arg("P"), py::arg("Q"),
        py::arg("i"), py::arg("j"), py::arg("k"), py::arg("l"), py::arg("amplitude"),
        py::arg("levels"), py::arg("gas"), py::arg("quad_order") = 16);

  // ---- oracles -----------------------------------------------------------
  m.def("lambda_power_law", &lambda_power_law, py::arg("t"), py::arg("tau"));
  m.def("lambda_stretched", &lambda_stretched, py::arg("t"), py::arg("tau"));
  m.def("gradshteyn_identity_residual", &gradshteyn_identity_residual, py::arg("a"),
        py::arg("b"));
  m.def(
      "psi_multiexponential",
      [](double t, const std::vector<double>& w, const std::vector<double>& r) {
        return psi_multiexponential(t, w, r);
      },
      py::arg("t"), py::arg("weights"), py::arg("rates"));
  m.def("position_solution", &position_solution, py::arg("t"), py::arg("rate"),
        py::arg("phi"), py::arg("initial"));
  m.def(
      "loglog_slope",
      [](const std::vector<double>& t, const std::vector<double>& v) {
        return loglog_slope(t, v);
      },
      py::arg("times"), py::arg("values"));

  py::class_<GeometricFamily>(m, "GeometricFamily")
      .def_static("make", &GeometricFamily::make, py::arg("a"), py::arg("b"),
                  py::arg("lambda0"))
      .def_readonly("a", &GeometricFamily::a)
      .def_readonly("b", &GeometricFamily::b)
      .def_readonly("lambda0", &GeometricFamily::lambda0)
      .def_readonly("r_max", &GeometricFamily::r_max)
      .def_readonly("weights", &GeometricFamily::weights)
      .def_readonly("rates", &GeometricFamily::rates);

  py::class_<DecayCurve>(m, "DecayCurve")
      .def_readonly("times", &DecayCurve::times)
      .def_readonly("values", &DecayCurve::values)
      .def_readonly("meta", &DecayCurve::meta);

  // ---- internal-coherence scenario ----------------------------------------
  py::class_<FrictionSpec>(m, "FrictionSpec")
      .def_static("constant", &FrictionSpec::constant, py::arg("eta"))
      .def_static("uniform", &FrictionSpec::uniform, py::arg("eta"))
      .def_static("quadratic", &FrictionSpec::quadratic, py::arg("a"))
      .def_static("inverse_quadratic", &FrictionSpec::inverse_quadratic, py::arg("b"))
      .def("xi", &FrictionSpec::xi)
      .def("coherence_rate", &FrictionSpec::coherence_rate);

  py::enum_<RadialRuleKind>(m, "RadialRuleKind")
      .value("jacobi_truncated", RadialRuleKind::jacobi_truncated)
      .value("laguerre_half", RadialRuleKind::laguerre_half);

  py::class_<RadialQuadratureSpec>(m, "RadialQuadratureSpec")
      .def(py::init<>())
      .def_readwrite("order", &RadialQuadratureSpec::order)
      .def_readwrite("kind", &RadialQuadratureSpec::kind)
      .def_readwrite("u_max", &RadialQuadratureSpec::u_max);

  m.def("coherence_decay_curve", &coherence_decay_curve, py::arg("friction"),
        py::arg("gas"), py::arg("t_grid"),
        py::arg("quadrature") = RadialQuadratureSpec{},
        py::arg("convergence_check") = true);

  // ---- kick scenario -------------------------------------------------------
  py::class_<KickDensity>(m, "KickDensity")
      .def_static("isotropic_gaussian", &KickDensity::isotropic_gaussian,
                  py::arg("sigma"))
      .def_static("discrete_mixture", &KickDensity::discrete_mixture, py::arg("atoms"))
      .def_static("far_field", &KickDensity::far_field);

  py::class_<KickChannel>(m, "KickChannel")
      .def(py::init([](double rate, const KickDensity& density) {
             return KickChannel{rate, density};
           }),
           py::arg("rate"), py::arg("density"))
      .def_readwrite("rate", &KickChannel::rate)
      .def_readwrite("density", &KickChannel::density);

  py::class_<KickSpec>(m, "KickSpec")
      .def_static("diagonal", &KickSpec::diagonal, py::arg("channels"))
      .def_static("cross", &KickSpec::cross, py::arg("rates"), py::arg("densities"))
      .def_property_readonly("labels", &KickSpec::labels)
      .def_property_readonly("is_diagonal", &KickSpec::is_diagonal);

  m.def("characteristic_function", &characteristic_function, py::arg("density"),
        py::arg("d"));
  m.def("build_kick_coherence_ode", &build_kick_coherence_ode, py::arg("d"),
        py::arg("kicks"));
  m.def("evolve_linear", &evolve_linear, py::arg("A"), py::arg("c0"),
        py::arg("t_grid"));

  py::class_<PreparationSpec>(m, "PreparationSpec")
      .def_static("internal", &PreparationSpec::internal, py::arg("sigma"))
      .def_static("label_weights", &PreparationSpec::label_weights, py::arg("weights"))
      .def_static("geometric", &PreparationSpec::geometric, py::arg("family"));

  m.def("visibility_decay", &visibility_decay, py::arg("preparation"),
        py::arg("kicks"), py::arg("d"), py::arg("t_grid"));

  // ---- states, generators, evolution ---------------------------------------
  py::class_<LabelSpace>(m, "LabelSpace")
      .def_static("discrete", &LabelSpace::discrete, py::arg("count"))
      .def_static("grid", &LabelSpace::grid, py::arg("coordinates"), py::arg("weights"))
      .def("__len__", &LabelSpace::size)
      .def("weight", &LabelSpace::weight)
      .def("coordinate", &LabelSpace::coordinate,
           py::return_value_policy::reference_internal);

  py::class_<BlockDiagonalState>(m, "BlockDiagonalState")
      .def(py::init<LabelSpace, std::vector<Eigen::MatrixXcd>>(), py::arg("space"),
           py::arg("blocks"))
      .def("__len__", &BlockDiagonalState::size)
      .def("block", &BlockDiagonalState::block,
           py::return_value_policy::reference_internal)
      .def_property_readonly("space", &BlockDiagonalState::space);

  m.def("total_trace", &total_trace);
  m.def("marginalize", &marginalize);
  m.def("label_weights", &label_weights);

  py::class_<GeneralizedLindbladGenerator>(m, "GeneralizedLindbladGenerator")
      .def_property_readonly("rate_scale", &GeneralizedLindbladGenerator::rate_scale);

  m.def("radial_thermal_rule", &radial_thermal_rule, py::arg("order"),
        py::arg("p_beta"), py::arg("kind") = RadialRuleKind::jacobi_truncated,
        py::arg("u_max") = 21.0);
  py::class_<RadialThermalRule>(m, "RadialThermalRule")
      .def_readonly("momenta", &RadialThermalRule::momenta)
      .def_readonly("weights", &RadialThermalRule::weights);

  m.def("radial_thermal_space", &radial_thermal_space, py::arg("rule"), py::arg("gas"));
  m.def("thermal_radial_state", &thermal_radial_state, py::arg("space"),
        py::arg("gas"), py::arg("sigma"));
  m.def("build_internal_coherence_generator", &build_internal_coherence_generator,
        py::arg("friction"), py::arg("grid"));
  m.def("lattice_space_1d", &lattice_space_1d, py::arg("count"), py::arg("spacing"));

  m.def(
      "evolve_marginal_coherence",
      [](const GeneralizedLindbladGenerator& gen, const BlockDiagonalState& s0,
         double t_end, int steps) {
        EvolutionConfig cfg;
        cfg.t_end = t_end;
        cfg.steps = steps;
        cfg.observers = {Observer::marginal_element("coherence", 0, 1),
                         Observer::total_trace("trace")};
        const EvolveResult res = evolve(gen, s0, cfg);
        py::dict out = series_to_dict(res.series);
        out["max_trace_drift"] = res.invariants.max_trace_drift;
        out["max_negativity"] = res.invariants.max_negativity;
        return out;
      },
      py::arg("generator"), py::arg("state"), py::arg("t_end"), py::arg("steps"),
      "Fixed-step trajectory of the (0,1) marginal element and the total trace.");

  // ---- config-driven runs ---------------------------------------------------
  m.def(
      "run_config_string",
      [](const std::string& config_json, const std::string& out_dir) {
        const RunConfig cfg = parse_run_config(nlohmann::json::parse(config_json));
        const RunOutcome out = run_scenario(cfg, out_dir);
        py::dict d;
        d["exit_code"] = out.exit_code;
        d["csv_path"] = out.csv_path;
        d["report_path"] = out.report_path;
        d["report"] = out.report.dump();
        d["series"] = series_to_dict(out.series);
        return d;
      },
      py::arg("config_json"), py::arg("out_dir"),
      "Run a scenario config (JSON text); artifacts land in out_dir.");

  m.attr("__version__") = "0.1.0";
}
