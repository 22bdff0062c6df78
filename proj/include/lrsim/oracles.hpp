#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace lrsim {

// Sampled scalar decay curve with a descriptor of where it came from.
struct DecayCurve {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
  std::string meta;
};

// (1 + t/tau)^{-3/2}: marginal coherence under quadratic friction.
double lambda_power_law(double t, double tau);

// (1 + sqrt(t/tau)) e^{-sqrt(t/tau)}: stretched exponential with square-root
// correction, from inverse-quadratic friction.
double lambda_stretched(double t, double tau);

// Relative residual between adaptive quadrature of
//   int_0^inf x^2 e^{-a/x^2 - b x^2} dx
// and the closed form sqrt(pi/(16 b^3)) (1 + 2 sqrt(ab)) e^{-2 sqrt(ab)}.
// The integration interval is split at the integrand peak x = (a/b)^{1/4}.
double gradshteyn_identity_residual(double a, double b);

// Survival probability of a multiexponential waiting-time mixture.
double psi_multiexponential(double t, std::span<const double> weights,
                            std::span<const double> rates);

// Geometric weight/rate family p_r = (1-p0) p0^r, rate_r = lambda0 gamma0^r
// with p0 = e^-a, gamma0 = e^-b, truncated at the smallest r_max with
// (1-p0) p0^r < 1e-14 (tail mass below 1e-12).
struct GeometricFamily {
  double a = 1.0;
  double b = 1.0;
  double lambda0 = 1.0;
  int r_max = 0;
  std::vector<double> weights;
  std::vector<double> rates;

  static GeometricFamily make(double a, double b, double lambda0);
};

// Closed-form position-representation solution of the diagonal kick model:
// e^{-rate (1 - phi) t} * initial.
std::complex<double> position_solution(double t, double rate,
                                       std::complex<double> phi,
                                       std::complex<double> initial);

// Least-squares slope of log(values) vs log(times); the power-law exponent
// probe for survival curves.
double loglog_slope(std::span<const double> times, std::span<const double> values);

}  // namespace lrsim
