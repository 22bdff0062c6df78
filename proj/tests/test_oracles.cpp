#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lrsim/oracles.hpp"

using namespace lrsim;

TEST_CASE("power-law decay values") {
  CHECK(lambda_power_law(0.0, 2.0) == 1.0);
  CHECK(lambda_power_law(2.0, 2.0) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
  CHECK(lambda_power_law(6.0, 2.0) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("stretched-exponential decay values") {
  CHECK(lambda_stretched(0.0, 3.0) == 1.0);
  CHECK(lambda_stretched(3.0, 3.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-15));
  CHECK(lambda_stretched(12.0, 3.0) ==
        doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("decay laws are completely monotone on a sample grid") {
  std::vector<double> pl, st;
  for (int k = 0; k <= 200; ++k) {
    const double t = 0.05 * k;
    pl.push_back(lambda_power_law(t, 1.0));
    st.push_back(lambda_stretched(t, 1.0));
  }
  for (const auto& v : {pl, st}) {
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(v[k] > 0.0);
    for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k] <= v[k - 1]);
    for (std::size_t k = 2; k < v.size(); ++k)
      CHECK(v[k] - 2 * v[k - 1] + v[k - 2] >= -1e-12);
  }
}

TEST_CASE("gradshteyn identity: a -> 0 limit is the plain gaussian moment") {
  // int x^2 e^{-b x^2} = sqrt(pi) / (4 b^{3/2}) equals the closed form at a -> 0
  CHECK(gradshteyn_identity_residual(1e-16, 1.0) < 1e-9);
}

TEST_CASE("gradshteyn identity at (1,1) and across random (a,b)") {
  CHECK(gradshteyn_identity_residual(1.0, 1.0) < 1e-10);
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double a = std::pow(10.0, u(rng));
    const double b = std::pow(10.0, u(rng));
    worst = std::max(worst, gradshteyn_identity_residual(a, b));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("multiexponential survival") {
  const std::vector<double> w1{1.0}, r1{0.7};
  CHECK(psi_multiexponential(2.0, w1, r1) == doctest::Approx(std::exp(-1.4)).epsilon(1e-15));

  SUBCASE("geometric family satisfies the scaling functional equation") {
    // Psi(gamma0 t) = (1/p0) [Psi(t) - (1-p0) e^{-Lambda0 t}]: rescaling time
    // by the rate ratio shifts the geometric ladder one rung
    const GeometricFamily fam = GeometricFamily::make(1.0, 1.0, 1.0);
    const double p0 = std::exp(-1.0);
    const double g0 = std::exp(-1.0);
    double worst = 0.0;
    for (int k = 0; k <= 60; ++k) {
      const double t = std::pow(10.0, -1.0 + k * (3.0 + 1.0) / 60.0);
      const double lhs = psi_multiexponential(g0 * t, fam.weights, fam.rates);
      const double rhs =
          (psi_multiexponential(t, fam.weights, fam.rates) -
           (1.0 - p0) * std::exp(-fam.lambda0 * t)) /
          p0;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst < 1e-12);
  }

  SUBCASE("long-time log-log slope is -a/b") {
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {1.5, 1.0}, {1.0, 2.0}}) {
      const GeometricFamily fam = GeometricFamily::make(a, b, 1.0);
      std::vector<double> ts, vs;
      for (int k = 0; k <= 80; ++k) {
        const double t = std::pow(10.0, 2.0 + 2.0 * k / 80.0);
        ts.push_back(t);
        vs.push_back(psi_multiexponential(t, fam.weights, fam.rates));
      }
      const double slope = loglog_slope(ts, vs);
      CHECK(std::abs(slope + a / b) <= 0.02 * (a / b));
    }
  }
}

TEST_CASE("geometric family truncation keeps the tail below 1e-12") {
  const GeometricFamily fam = GeometricFamily::make(1.0, 2.0, 3.0);
  double mass = 0.0;
  for (double w : fam.weights) mass += w;
  CHECK(std::abs(mass - 1.0) < 1e-12);
  CHECK(fam.weights.back() < 1e-13);
}

TEST_CASE("position-representation closed form") {
  const std::complex<double> c0(0.25, -0.5);
  CHECK(position_solution(0.0, 2.0, {0.3, 0.0}, c0) == c0);
  // phi = 1 at zero separation: element untouched
  CHECK(std::abs(position_solution(7.0, 2.0, {1.0, 0.0}, c0) - c0) < 1e-15);
  const std::complex<double> z =
      position_solution(1.5, 2.0, {0.25, 0.1}, c0);
  const std::complex<double> expect =
      std::exp(-2.0 * (1.0 - std::complex<double>(0.25, 0.1)) * 1.5) * c0;
  CHECK(std::abs(z - expect) < 1e-15);
}
