#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace lrsim {

// Physical inputs for the collision kernel. hbar = 1 throughout; masses,
// momenta and energies in one coherent unit system chosen by the caller.
struct GasParameters {
  double m = 1.0;      // gas particle mass
  double M = 1.0;      // test particle mass
  double n_gas = 1.0;  // number density
  double beta = 1.0;   // inverse temperature

  [[nodiscard]] double m_star() const { return m * M / (m + M); }
  [[nodiscard]] double p_beta() const { return std::sqrt(2.0 * m / beta); }
  void check() const;
};

// Internal level structure: energies hbar*omega_j, transition energies
// eps_ij = omega_i - omega_j and the basis maps E_ij = |i><j|.
class InternalLevels {
 public:
  explicit InternalLevels(Eigen::VectorXd omega);

  [[nodiscard]] int n() const { return static_cast<int>(omega_.size()); }
  [[nodiscard]] double omega(int j) const { return omega_[j]; }
  [[nodiscard]] double epsilon(int i, int j) const { return omega_[i] - omega_[j]; }
  [[nodiscard]] Eigen::MatrixXcd basis_map(int i, int j) const;  // E_ij

 private:
  Eigen::VectorXd omega_;
};

// Complex scattering amplitude f_ij(p_out, p_in) for a transition from an
// in state (p_in, j) to an out state (p_out, i). Callables must be pure.
class ScatteringAmplitude {
 public:
  using Fn = std::function<std::complex<double>(int, int, const Eigen::Vector3d&,
                                                const Eigen::Vector3d&)>;

  ScatteringAmplitude(int n_levels, Fn f, std::string family = "custom");

  [[nodiscard]] std::complex<double> operator()(int i, int j,
                                                const Eigen::Vector3d& p_out,
                                                const Eigen::Vector3d& p_in) const {
    return f_(i, j, p_out, p_in);
  }
  [[nodiscard]] int levels() const { return n_; }
  [[nodiscard]] const std::string& family() const { return family_; }

  // f_ij = c_ij
  static ScatteringAmplitude constant(const Eigen::MatrixXcd& c);
  // f_ij = delta_ij f0 (elastic, channel independent)
  static ScatteringAmplitude elastic_constant(int n_levels, std::complex<double> f0);
  // f_ij = c_ij exp(-|p_out - p_in|^2 / (2 w^2))
  static ScatteringAmplitude gaussian_envelope(const Eigen::MatrixXcd& c, double width);
  // f_ij = c_ij exp(-(|p_out|^2 + |p_in|^2) / (2 w^2))
  static ScatteringAmplitude separable(const Eigen::MatrixXcd& c, double width);

 private:
  int n_;
  Fn f_;
  std::string family_;
};

// Maxwell-Boltzmann momentum distribution mu_beta(p), normalized on R^3.
double maxwell_boltzmann(const Eigen::Vector3d& p, const GasParameters& gas);
// Two-dimensional variant on the plane perpendicular to the momentum
// transfer, normalized on R^2.
double maxwell_boltzmann_2d(const Eigen::Vector3d& p_perp, const GasParameters& gas);

// Relative momentum rel(p, P) = (m*/m) p - (m*/M) P.
Eigen::Vector3d rel(const Eigen::Vector3d& p, const Eigen::Vector3d& P,
                    const GasParameters& gas);

// Energy transferred to the centre of mass when the test particle momentum
// changes from P to P + Q; depends on P only through its component along Q.
double energy_transfer(const Eigen::Vector3d& Q, const Eigen::Vector3d& P,
                       const GasParameters& gas);

// Dynamic structure factor of the free Maxwell-Boltzmann gas. Singular at
// Q = 0 (throws): grid constructions must exclude the zero-transfer point.
double dynamic_structure_factor(const Eigen::Vector3d& Q, double energy,
                                const GasParameters& gas);

// Deterministic orthonormal frame {e1, e2} spanning the plane perpendicular
// to Q: take the coordinate axis least aligned with Q, Gram-Schmidt it
// against Q-hat, complete with the cross product.
std::pair<Eigen::Vector3d, Eigen::Vector3d> perp_frame(const Eigen::Vector3d& Q);

// |LHS - RHS| of the identity tying the boosted 3D Maxwell-Boltzmann weight
// to mu_beta^2D x S_MB; the algebra bridge certified by the property tests.
double sdf_identity_residual(const Eigen::Vector3d& p_perp, const Eigen::Vector3d& Q,
                             const Eigen::Vector3d& P, double eps_ij,
                             const GasParameters& gas);
// Same residual divided by max(|LHS|, |RHS|).
double sdf_identity_relative_residual(const Eigen::Vector3d& p_perp,
                                      const Eigen::Vector3d& Q,
                                      const Eigen::Vector3d& P, double eps_ij,
                                      const GasParameters& gas);

// Rate coefficient M^{jl}_{ik}(P + Q; Q): the rate density for scattering
// from P to P + Q, with the plane integral over gas momenta done by tensor
// Gauss-Hermite of the given order per axis. Structurally zero (returns 0)
// unless eps_ij == eps_kl.
std::complex<double> rate_coefficient(const Eigen::Vector3d& P,
                                      const Eigen::Vector3d& Q, int i, int j, int k,
                                      int l, const ScatteringAmplitude& amp,
                                      const InternalLevels& levels,
                                      const GasParameters& gas, int quad_order);

struct RateEntry {
  int i, j, k, l;
  std::complex<double> value;
};

struct RateTablePoint {
  Eigen::Vector3d P;  // post-collision momentum (first argument of M)
  Eigen::Vector3d Q;  // momentum transfer
  std::vector<RateEntry> entries;
};

// Tabulated M^{jl}_{ik}(P; Q) on a (P, Q) grid. Entry convention: the value
// stored at (P, Q) is the rate for scattering P - Q -> P, i.e. the gain
// coefficient multiplying rho(P - Q) in the compact master equation; the
// loss coefficient at P' is the same table read at (P' + Q; Q).
class RateCoefficientTable {
 public:
  RateCoefficientTable(GasParameters gas, Eigen::VectorXd omega,
                       std::vector<RateTablePoint> points);

  static RateCoefficientTable compute(const GasParameters& gas,
                                      const InternalLevels& levels,
                                      const ScatteringAmplitude& amp,
                                      const std::vector<Eigen::Vector3d>& p_list,
                                      const std::vector<Eigen::Vector3d>& q_list,
                                      int quad_order);

  [[nodiscard]] const std::vector<RateTablePoint>& points() const { return points_; }
  [[nodiscard]] const GasParameters& gas() const { return gas_; }
  [[nodiscard]] const Eigen::VectorXd& omega() const { return omega_; }

  // max |M^{jl}_{ik} - conj(M^{lj}_{ki})| over the table
  [[nodiscard]] double hermiticity_defect() const;

  [[nodiscard]] nlohmann::json to_json() const;

 private:
  GasParameters gas_;
  Eigen::VectorXd omega_;
  std::vector<RateTablePoint> points_;
};

}  // namespace lrsim
