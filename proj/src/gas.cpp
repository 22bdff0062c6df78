#include "lrsim/gas.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>

#include "lrsim/errors.hpp"
#include "lrsim/kahan.hpp"
#include "lrsim/quadrature.hpp"

namespace lrsim {

void GasParameters::check() const {
  if (!(m > 0.0) || !(M > 0.0) || !(n_gas > 0.0) || !(beta > 0.0))
    throw StructuralError("GasParameters: m, M, n_gas, beta must all be > 0");
}

InternalLevels::InternalLevels(Eigen::VectorXd omega) : omega_(std::move(omega)) {
  if (omega_.size() < 1) throw StructuralError("InternalLevels: need at least one level");
}

Eigen::MatrixXcd InternalLevels::basis_map(int i, int j) const {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n(), n());
  e(i, j) = 1.0;
  return e;
}

ScatteringAmplitude::ScatteringAmplitude(int n_levels, Fn f, std::string family)
    : n_(n_levels), f_(std::move(f)), family_(std::move(family)) {
  if (n_ < 1) throw StructuralError("ScatteringAmplitude: need at least one level");
  if (!f_) throw StructuralError("ScatteringAmplitude: empty callable");
}

ScatteringAmplitude ScatteringAmplitude::constant(const Eigen::MatrixXcd& c) {
  const int n = static_cast<int>(c.rows());
  return {n,
          [c](int i, int j, const Eigen::Vector3d&, const Eigen::Vector3d&) {
            return c(i, j);
          },
          "constant"};
}

ScatteringAmplitude ScatteringAmplitude::elastic_constant(int n_levels,
                                                          std::complex<double> f0) {
  return {n_levels,
          [f0](int i, int j, const Eigen::Vector3d&, const Eigen::Vector3d&) {
            return i == j ? f0 : std::complex<double>(0.0, 0.0);
          },
          "elastic_constant"};
}

ScatteringAmplitude ScatteringAmplitude::gaussian_envelope(const Eigen::MatrixXcd& c,
                                                           double width) {
  if (!(width > 0.0)) throw StructuralError("gaussian_envelope: width must be > 0");
  const int n = static_cast<int>(c.rows());
  const double inv2w2 = 1.0 / (2.0 * width * width);
  return {n,
          [c, inv2w2](int i, int j, const Eigen::Vector3d& p_out,
                      const Eigen::Vector3d& p_in) {
            return c(i, j) * std::exp(-(p_out - p_in).squaredNorm() * inv2w2);
          },
          "gaussian_envelope"};
}

ScatteringAmplitude ScatteringAmplitude::separable(const Eigen::MatrixXcd& c,
                                                   double width) {
  if (!(width > 0.0)) throw StructuralError("separable: width must be > 0");
  const int n = static_cast<int>(c.rows());
  const double inv2w2 = 1.0 / (2.0 * width * width);
  return {n,
          [c, inv2w2](int i, int j, const Eigen::Vector3d& p_out,
                      const Eigen::Vector3d& p_in) {
            return c(i, j) *
                   std::exp(-(p_out.squaredNorm() + p_in.squaredNorm()) * inv2w2);
          },
          "separable"};
}

double maxwell_boltzmann(const Eigen::Vector3d& p, const GasParameters& gas) {
  const double pb = gas.p_beta();
  const double norm = 1.0 / (std::pow(std::numbers::pi, 1.5) * pb * pb * pb);
  return norm * std::exp(-p.squaredNorm() / (pb * pb));
}

double maxwell_boltzmann_2d(const Eigen::Vector3d& p_perp, const GasParameters& gas) {
  const double pb = gas.p_beta();
  const double norm = 1.0 / (std::numbers::pi * pb * pb);
  return norm * std::exp(-p_perp.squaredNorm() / (pb * pb));
}

Eigen::Vector3d rel(const Eigen::Vector3d& p, const Eigen::Vector3d& P,
                    const GasParameters& gas) {
  const double ms = gas.m_star();
  return (ms / gas.m) * p - (ms / gas.M) * P;
}

double energy_transfer(const Eigen::Vector3d& Q, const Eigen::Vector3d& P,
                       const GasParameters& gas) {
  return Q.squaredNorm() / (2.0 * gas.M) + Q.dot(P) / gas.M;
}

double dynamic_structure_factor(const Eigen::Vector3d& Q, double energy,
                                const GasParameters& gas) {
  const double q = Q.norm();
  if (q == 0.0)
    throw std::domain_error("dynamic_structure_factor: undefined at Q = 0");
  const double s = Q.squaredNorm() + 2.0 * gas.m * energy;
  const double pref = std::sqrt(gas.beta * gas.m / (2.0 * std::numbers::pi)) / q;
  return pref * std::exp(-gas.beta * s * s / (8.0 * gas.m * Q.squaredNorm()));
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> perp_frame(const Eigen::Vector3d& Q) {
  const double q = Q.norm();
  if (q == 0.0) throw std::domain_error("perp_frame: undefined at Q = 0");
  const Eigen::Vector3d qhat = Q / q;
  int least = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(qhat[a]) < std::abs(qhat[least])) least = a;
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  axis[least] = 1.0;
  Eigen::Vector3d e1 = axis - axis.dot(qhat) * qhat;
  e1.normalize();
  const Eigen::Vector3d e2 = qhat.cross(e1);
  return {e1, e2};
}

double sdf_identity_residual(const Eigen::Vector3d& p_perp, const Eigen::Vector3d& Q,
                             const Eigen::Vector3d& P, double eps_ij,
                             const GasParameters& gas) {
  const double q = Q.norm();
  if (q == 0.0) throw std::domain_error("sdf_identity_residual: undefined at Q = 0");
  if (std::abs(p_perp.dot(Q)) > 1e-12 * p_perp.norm() * q &&
      p_perp.norm() > 0.0)
    throw StructuralError("sdf_identity_residual: p_perp not orthogonal to Q");
  const Eigen::Vector3d qhat = Q / q;
  const Eigen::Vector3d p_par = P.dot(qhat) * qhat;
  const Eigen::Vector3d arg = p_perp + (gas.m / gas.m_star()) * 0.5 * Q +
                              (gas.m / gas.M) * p_par +
                              (eps_ij * gas.m / (q * q)) * Q;
  const double lhs = (gas.m / q) * maxwell_boltzmann(arg, gas);
  const double rhs = maxwell_boltzmann_2d(p_perp, gas) *
                     dynamic_structure_factor(Q, energy_transfer(Q, P, gas) + eps_ij, gas);
  return std::abs(lhs - rhs);
}

double sdf_identity_relative_residual(const Eigen::Vector3d& p_perp,
                                      const Eigen::Vector3d& Q,
                                      const Eigen::Vector3d& P, double eps_ij,
                                      const GasParameters& gas) {
  const double q = Q.norm();
  if (q == 0.0) throw std::domain_error("sdf_identity_residual: undefined at Q = 0");
  const Eigen::Vector3d qhat = Q / q;
  const Eigen::Vector3d p_par = P.dot(qhat) * qhat;
  const Eigen::Vector3d arg = p_perp + (gas.m / gas.m_star()) * 0.5 * Q +
                              (gas.m / gas.M) * p_par +
                              (eps_ij * gas.m / (q * q)) * Q;
  const double lhs = (gas.m / q) * maxwell_boltzmann(arg, gas);
  const double rhs = maxwell_boltzmann_2d(p_perp, gas) *
                     dynamic_structure_factor(Q, energy_transfer(Q, P, gas) + eps_ij, gas);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

std::complex<double> rate_coefficient(const Eigen::Vector3d& P,
                                      const Eigen::Vector3d& Q, int i, int j, int k,
                                      int l, const ScatteringAmplitude& amp,
                                      const InternalLevels& levels,
                                      const GasParameters& gas, int quad_order) {
  gas.check();
  const double eps_ij = levels.epsilon(i, j);
  const double eps_kl = levels.epsilon(k, l);
  const double q = Q.norm();
  if (q == 0.0) {
    if (eps_ij != 0.0 || eps_kl != 0.0)
      throw std::domain_error(
          "rate_coefficient: transition energy must vanish at Q = 0");
    throw std::domain_error("rate_coefficient: undefined at Q = 0 (1/Q singularity)");
  }
  double omega_scale = 1.0;
  for (int a = 0; a < levels.n(); ++a)
    omega_scale = std::max(omega_scale, std::abs(levels.omega(a)));
  if (std::abs(eps_ij - eps_kl) > 1e-12 * omega_scale)
    return {0.0, 0.0};  // structurally zero channel pair

  const double sdf =
      dynamic_structure_factor(Q, energy_transfer(Q, P, gas) + eps_ij, gas);

  const auto [e1, e2] = perp_frame(Q);
  const Eigen::Vector3d qhat = Q / q;
  const Eigen::Vector3d P_perp = P - P.dot(qhat) * qhat;

  const double ms = gas.m_star();
  const Eigen::Vector3d half_q = 0.5 * Q;
  const Eigen::Vector3d shift_ij = (ms * eps_ij / (q * q)) * Q;
  const Eigen::Vector3d shift_kl = (ms * eps_kl / (q * q)) * Q;

  const GaussRule gh = gauss_hermite(quad_order);
  const double pb = gas.p_beta();

  KahanComplex acc;
  for (int a = 0; a < gh.size(); ++a) {
    for (int b = 0; b < gh.size(); ++b) {
      const Eigen::Vector3d p_perp = pb * (gh.nodes[a] * e1 + gh.nodes[b] * e2);
      const Eigen::Vector3d r = rel(p_perp, P_perp, gas);
      const std::complex<double> f1 =
          amp(i, j, r - half_q + shift_ij, r + half_q + shift_ij);
      const std::complex<double> f2 =
          amp(k, l, r - half_q + shift_kl, r + half_q + shift_kl);
      acc.add(gh.weights[a] * gh.weights[b] * f1 * std::conj(f2));
    }
  }
  const double pref = gas.n_gas / (ms * ms);
  return pref * sdf * acc.value() / std::numbers::pi;
}

RateCoefficientTable::RateCoefficientTable(GasParameters gas, Eigen::VectorXd omega,
                                           std::vector<RateTablePoint> points)
    : gas_(gas), omega_(std::move(omega)), points_(std::move(points)) {
  gas_.check();
}

RateCoefficientTable RateCoefficientTable::compute(
    const GasParameters& gas, const InternalLevels& levels,
    const ScatteringAmplitude& amp, const std::vector<Eigen::Vector3d>& p_list,
    const std::vector<Eigen::Vector3d>& q_list, int quad_order) {
  gas.check();
  const int n = levels.n();
  std::vector<RateTablePoint> points;
  points.reserve(p_list.size() * q_list.size());
  for (const Eigen::Vector3d& P : p_list) {
    for (const Eigen::Vector3d& Q : q_list) {
      RateTablePoint pt;
      pt.P = P;
      pt.Q = Q;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              if (std::abs(levels.epsilon(i, j) - levels.epsilon(k, l)) > 1e-12)
                continue;
              // stored value is M(P; Q): gain coefficient for P - Q -> P
              const std::complex<double> v = rate_coefficient(
                  P - Q, Q, i, j, k, l, amp, levels, gas, quad_order);
              pt.entries.push_back(RateEntry{i, j, k, l, v});
            }
      points.push_back(std::move(pt));
    }
  }
  Eigen::VectorXd omega(n);
  for (int i = 0; i < n; ++i) omega[i] = levels.omega(i);
  return {gas, std::move(omega), std::move(points)};
}

double RateCoefficientTable::hermiticity_defect() const {
  double defect = 0.0;
  for (const RateTablePoint& pt : points_) {
    for (const RateEntry& e : pt.entries) {
      for (const RateEntry& f : pt.entries) {
        if (f.i == e.k && f.j == e.l && f.k == e.i && f.l == e.j)
          defect = std::max(defect, std::abs(e.value - std::conj(f.value)));
      }
    }
  }
  return defect;
}

nlohmann::json RateCoefficientTable::to_json() const {
  nlohmann::json j;
  j["gas"] = {{"m", gas_.m}, {"M", gas_.M}, {"n_gas", gas_.n_gas}, {"beta", gas_.beta}};
  j["levels"] = std::vector<double>(omega_.data(), omega_.data() + omega_.size());
  nlohmann::json grid = nlohmann::json::array();
  for (const RateTablePoint& pt : points_) {
    nlohmann::json entries = nlohmann::json::array();
    for (const RateEntry& e : pt.entries)
      entries.push_back({{"i", e.i},
                         {"j", e.j},
                         {"k", e.k},
                         {"l", e.l},
                         {"re", e.value.real()},
                         {"im", e.value.imag()}});
    grid.push_back({{"P", {pt.P[0], pt.P[1], pt.P[2]}},
                    {"Q", {pt.Q[0], pt.Q[1], pt.Q[2]}},
                    {"entries", std::move(entries)}});
  }
  j["grid"] = std::move(grid);
  return j;
}

}  // namespace lrsim
