#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lrsim/errors.hpp"
#include "lrsim/quadrature.hpp"

using namespace lrsim;

TEST_CASE("gauss_hermite reproduces known low-order rules and moments") {
  const GaussRule r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-14));

  const GaussRule r = gauss_hermite(20);
  CHECK(r.weights.sum() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  // int x^2 e^{-x^2} = sqrt(pi)/2, int x^4 e^{-x^2} = 3 sqrt(pi)/4
  CHECK((r.weights * r.nodes.square()).sum() ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-13));
  CHECK((r.weights * r.nodes.pow(4)).sum() ==
        doctest::Approx(3.0 * std::sqrt(std::numbers::pi) / 4).epsilon(1e-13));
}

TEST_CASE("gauss_laguerre reproduces gamma-function moments") {
  const GaussRule r = gauss_laguerre(24, 0.5);
  CHECK(r.weights.sum() == doctest::Approx(std::tgamma(1.5)).epsilon(1e-13));
  // int x^{1/2+k} e^{-x} = Gamma(k + 3/2)
  CHECK((r.weights * r.nodes).sum() == doctest::Approx(std::tgamma(2.5)).epsilon(1e-13));
  CHECK((r.weights * r.nodes.square()).sum() ==
        doctest::Approx(std::tgamma(3.5)).epsilon(1e-13));
  CHECK(r.nodes.minCoeff() > 0.0);
}

TEST_CASE("gauss_jacobi integrates monomials against (1+x)^{1/2}") {
  const GaussRule r = gauss_jacobi(16, 0.0, 0.5);
  // int_-1^1 (1+x)^{1/2} dx = 2^{3/2} * 2/3
  CHECK(r.weights.sum() == doctest::Approx(std::pow(2.0, 1.5) * 2.0 / 3.0).epsilon(1e-14));
  // int_-1^1 x (1+x)^{1/2} dx = 2^{5/2} (1/5 - 1/3) + 2^{3/2} * ... do it via
  // substitution u = 1+x: int_0^2 (u-1) u^{1/2} du = [2/5 u^{5/2} - 2/3 u^{3/2}]_0^2
  const double expect = 2.0 / 5.0 * std::pow(2.0, 2.5) - 2.0 / 3.0 * std::pow(2.0, 1.5);
  CHECK((r.weights * r.nodes).sum() == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature hits sharp and smooth integrands") {
  const double gauss = integrate_adaptive(
      [](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-13);
  CHECK(gauss == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));

  // narrow peak
  const double peak = integrate_adaptive(
      [](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
  const double expect = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);
  CHECK(peak == doctest::Approx(expect).epsilon(1e-10));

  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sqrt(std::abs(x)); },
                                     -1.0, 1.0, 1e-300, 8),
                  QuadratureError);
}

TEST_CASE("radial thermal rule integrates thermal averages") {
  for (const auto kind : {RadialRuleKind::jacobi_truncated, RadialRuleKind::laguerre_half}) {
    // the truncated rule carries a sqrt(u) e^{-u} tail beyond u_max = 21,
    // ~4e-9 of the mass and a few 1e-7 of the second moment
    const double tol = kind == RadialRuleKind::jacobi_truncated ? 1e-6 : 1e-13;
    const RadialThermalRule rule = radial_thermal_rule(48, 2.0, kind);
    CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(tol));
    // <P^2> = (3/2) p_beta^2
    const double p2 = (rule.weights * rule.momenta.square()).sum();
    CHECK(p2 == doctest::Approx(1.5 * 4.0).epsilon(tol));
    CHECK(rule.momenta.minCoeff() > 0.0);
  }
}

TEST_CASE("radial rule rejects bad arguments") {
  CHECK_THROWS_AS(radial_thermal_rule(0, 1.0), StructuralError);
  CHECK_THROWS_AS(radial_thermal_rule(8, -1.0), StructuralError);
}
