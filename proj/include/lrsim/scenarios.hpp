#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lrsim/gas.hpp"
#include "lrsim/generator.hpp"
#include "lrsim/oracles.hpp"
#include "lrsim/quadrature.hpp"

namespace lrsim {

// ---------------------------------------------------------------------------
// Internal-coherence setting: classical momentum label, quantum internal
// state, elastic forward scattering parametrized by the functions xi_ik(P).
// ---------------------------------------------------------------------------

// xi_ik(P) family: Hermitian in (i,k) with nonnegative diagonal. The n = 2
// coherence decays at Xi(P) = xi_11/2 + xi_22/2 - xi_12.
class FrictionSpec {
 public:
  using Fn = std::function<std::complex<double>(int, int, const Eigen::Vector3d&)>;

  FrictionSpec(int n_levels, Fn xi, bool isotropic, std::string family = "custom");

  [[nodiscard]] int levels() const { return n_; }
  [[nodiscard]] bool isotropic() const { return isotropic_; }
  [[nodiscard]] const std::string& family() const { return family_; }
  [[nodiscard]] std::complex<double> xi(int i, int k, const Eigen::Vector3d& P) const {
    return fn_(i, k, P);
  }
  // Hermitian matrix [xi_ik(P)]
  [[nodiscard]] Eigen::MatrixXcd matrix(const Eigen::Vector3d& P) const;
  // Xi(P) for n = 2
  [[nodiscard]] std::complex<double> coherence_rate(const Eigen::Vector3d& P) const;

  // xi_11 = xi_22 = eta, xi_12 = 0: Markovian, Xi = eta
  static FrictionSpec constant(double eta);
  // all xi_ik = eta: Xi = 0, coherence frozen
  static FrictionSpec uniform(double eta);
  // xi_ii = a P^2, xi_12 = 0: Xi = a P^2 (power-law decay)
  static FrictionSpec quadratic(double a);
  // xi_ii = b / P^2, xi_12 = 0: Xi = b / P^2 (stretched-exponential decay)
  static FrictionSpec inverse_quadratic(double b);

 private:
  int n_;
  Fn fn_;
  bool isotropic_;
  std::string family_;
};

// Radial quadrature selection for thermal averages over the momentum label.
struct RadialQuadratureSpec {
  int order = 64;
  RadialRuleKind kind = RadialRuleKind::jacobi_truncated;
  double u_max = 21.0;  // used by jacobi_truncated: grid truncated at sqrt(u_max) p_beta
};

// Label space over a radial momentum grid: coordinates P_k z-hat, weights =
// rule weight / mu_beta(P_k), so that thermal states carry blocks
// mu_beta(P_k) sigma.
LabelSpace radial_thermal_space(const RadialThermalRule& rule, const GasParameters& gas);

// Thermal preparation: blocks mu_beta(P_k) sigma over a radial space.
BlockDiagonalState thermal_radial_state(const LabelSpace& space,
                                        const GasParameters& gas,
                                        const Eigen::MatrixXcd& sigma);

// Decoupled per-label generator realizing
//   d rho(P)/dt = sum_ik xi_ik(P) E_ii rho(P) E_kk
//                 - 1/2 {sum_i xi_ii(P) E_ii, rho(P)}
// as alpha == beta jumps; populations are conserved exactly per label.
GeneralizedLindbladGenerator build_internal_coherence_generator(
    const FrictionSpec& friction, const LabelSpace& grid);

// Closed-path marginal coherence Lambda(t) = int dP e^{-Xi(P) t} mu_beta(P),
// by the radial rule for isotropic specs and tensor Gauss-Hermite otherwise.
// Doubling the order must change the result by < 1e-8 or a QuadratureError
// is thrown.
DecayCurve coherence_decay_curve(const FrictionSpec& friction,
                                 const GasParameters& gas,
                                 const std::vector<double>& t_grid,
                                 const RadialQuadratureSpec& quad = {},
                                 bool convergence_check = true);

// ---------------------------------------------------------------------------
// Momentum-kick setting: classical internal label, quantum centre of mass.
// ---------------------------------------------------------------------------

// Normalized momentum-kick probability density.
struct KickDensity {
  enum class Kind { gaussian, discrete, far_field };
  Kind kind = Kind::gaussian;
  double sigma = 1.0;  // isotropic gaussian width
  std::vector<std::pair<Eigen::Vector3d, double>> atoms;  // discrete mixture

  static KickDensity isotropic_gaussian(double sigma);
  static KickDensity discrete_mixture(
      std::vector<std::pair<Eigen::Vector3d, double>> atoms);
  // limit of a smooth density at separations past its coherence scale:
  // characteristic function identically zero away from d = 0
  static KickDensity far_field();

  void check() const;  // normalization within 1e-10
};

// Characteristic function phi(d) = int dQ P(Q) e^{i Q . d} (hbar = 1).
std::complex<double> characteristic_function(const KickDensity& density,
                                             const Eigen::Vector3d& d);

struct KickChannel {
  double rate = 0.0;  // total scattering rate Lambda_r
  KickDensity density;
};

// Collision rates lambda_jr(Q) = rate(j, r) * density(j, r)(Q); the diagonal
// case is the pure-decoherence kick model.
class KickSpec {
 public:
  static KickSpec diagonal(std::vector<KickChannel> channels);
  static KickSpec cross(Eigen::MatrixXd rates,
                        std::vector<std::vector<KickDensity>> densities);

  [[nodiscard]] int labels() const { return n_; }
  [[nodiscard]] bool is_diagonal() const { return diagonal_; }
  [[nodiscard]] double rate(int j, int r) const { return rates_(j, r); }
  [[nodiscard]] const KickDensity& density(int j, int r) const {
    return densities_[j][r];
  }

 private:
  KickSpec() = default;
  int n_ = 0;
  bool diagonal_ = true;
  Eigen::MatrixXd rates_;
  std::vector<std::vector<KickDensity>> densities_;
};

// Linear system matrix A(d) for the position-representation coefficients
// c_r(t) = <x| rho_r(t) |y> at fixed d = x - y:
//   A_rj(d) = rate_rj phi_rj(d) - delta_rj sum_k rate_kr.
Eigen::MatrixXcd build_kick_coherence_ode(const Eigen::Vector3d& d,
                                          const KickSpec& kicks);

// RK4 for dc/dt = A c sampled on t_grid; substeps chosen so |A| h <= 0.01.
std::vector<Eigen::VectorXcd> evolve_linear(const Eigen::MatrixXcd& A,
                                            const Eigen::VectorXcd& c0,
                                            const std::vector<double>& t_grid);

// Initial preparation: internal matrix sigma (unit trace) and/or a classical
// label distribution.
struct PreparationSpec {
  Eigen::MatrixXcd sigma;        // used by the internal-coherence setting
  std::vector<double> weights;   // used by the kick setting (p_r)

  static PreparationSpec internal(const Eigen::MatrixXcd& sigma);
  static PreparationSpec label_weights(std::vector<double> weights);
  // p_r = (1 - e^-a) e^{-a r}; pairs with GeometricFamily rates
  static PreparationSpec geometric(const GeometricFamily& family);
};

// Closed-form visibility sum_r p_r e^{-Lambda_r (1 - phi_r(d)) t} for the
// diagonal kick model.
DecayCurve visibility_decay(const PreparationSpec& prep, const KickSpec& kicks,
                            const Eigen::Vector3d& d,
                            const std::vector<double>& t_grid);

// ---------------------------------------------------------------------------
// Momentum-lattice setting driven by a rate coefficient table.
// ---------------------------------------------------------------------------

// 1D chain of momentum labels along z-hat, spacing-weighted.
LabelSpace lattice_space_1d(int count, double spacing);

// Realize the compact master equation on a truncated lattice as generalized
// Lindblad jumps: target = index of P, source = index of P - Q, operators
// from the eigendecomposition of the composite (ij),(kl) rate matrix per
// transition-energy class. Loss terms follow from the jump structure itself,
// which is the conservative closure: discrete trace conservation is exact on
// any truncation.
GeneralizedLindbladGenerator build_bloch_boltzmann_generator(
    const LabelSpace& grid, const RateCoefficientTable& table,
    const InternalLevels& levels);

}  // namespace lrsim
