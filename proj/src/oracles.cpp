#include "lrsim/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lrsim/errors.hpp"
#include "lrsim/kahan.hpp"
#include "lrsim/quadrature.hpp"

namespace lrsim {

double lambda_power_law(double t, double tau) {
  if (!(tau > 0.0) || t < 0.0)
    throw std::domain_error("lambda_power_law: need tau > 0, t >= 0");
  return std::pow(1.0 + t / tau, -1.5);
}

double lambda_stretched(double t, double tau) {
  if (!(tau > 0.0) || t < 0.0)
    throw std::domain_error("lambda_stretched: need tau > 0, t >= 0");
  const double s = std::sqrt(t / tau);
  return (1.0 + s) * std::exp(-s);
}

double gradshteyn_identity_residual(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("gradshteyn_identity_residual: need a, b > 0");
  const auto integrand = [a, b](double x) {
    return x * x * std::exp(-a / (x * x) - b * x * x);
  };
  // peak of the integrand; split there, and cut the tails where the factors
  // are below 1e-30 relative
  const double x_peak = std::pow(a / b, 0.25);
  const double x_lo = std::sqrt(a / 700.0);
  const double x_hi = std::max(2.0 * x_peak, std::sqrt(700.0 / b));
  const double left = integrate_adaptive(integrand, std::min(x_lo, x_peak), x_peak, 1e-13);
  const double right = integrate_adaptive(integrand, x_peak, x_hi, 1e-13);
  const double numeric = left + right;
  const double closed = std::sqrt(std::numbers::pi / (16.0 * b * b * b)) *
                        (1.0 + 2.0 * std::sqrt(a * b)) *
                        std::exp(-2.0 * std::sqrt(a * b));
  return std::abs(numeric - closed) / closed;
}

double psi_multiexponential(double t, std::span<const double> weights,
                            std::span<const double> rates) {
  if (weights.size() != rates.size())
    throw StructuralError("psi_multiexponential: weights/rates size mismatch");
  KahanReal acc;
  for (std::size_t r = 0; r < weights.size(); ++r) {
    if (weights[r] < 0.0 || rates[r] < 0.0)
      throw std::domain_error("psi_multiexponential: weights and rates must be >= 0");
    acc.add(weights[r] * std::exp(-rates[r] * t));
  }
  return acc.value();
}

GeometricFamily GeometricFamily::make(double a, double b, double lambda0) {
  if (!(a > 0.0) || !(b > 0.0) || !(lambda0 > 0.0))
    throw std::domain_error("GeometricFamily: need a, b, lambda0 > 0");
  GeometricFamily fam;
  fam.a = a;
  fam.b = b;
  fam.lambda0 = lambda0;
  const double p0 = std::exp(-a);
  const double g0 = std::exp(-b);
  int r = 0;
  while ((1.0 - p0) * std::pow(p0, r) >= 1e-14) ++r;
  fam.r_max = r;
  fam.weights.resize(r + 1);
  fam.rates.resize(r + 1);
  for (int k = 0; k <= r; ++k) {
    fam.weights[k] = (1.0 - p0) * std::pow(p0, k);
    fam.rates[k] = lambda0 * std::pow(g0, k);
  }
  return fam;
}

std::complex<double> position_solution(double t, double rate,
                                       std::complex<double> phi,
                                       std::complex<double> initial) {
  return std::exp(-rate * (1.0 - phi) * t) * initial;
}

double loglog_slope(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw StructuralError("loglog_slope: need >= 2 matched samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0) || !(values[k] > 0.0))
      throw std::domain_error("loglog_slope: samples must be positive");
    const double x = std::log(times[k]);
    const double y = std::log(values[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lrsim
