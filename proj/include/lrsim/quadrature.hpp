#pragma once

#include <Eigen/Dense>
#include <functional>

namespace lrsim {

// Nodes and weights of an n-point Gauss rule for some weight function.
struct GaussRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
};

// Weight e^{-x^2} on (-inf, inf). Sum of weights is sqrt(pi).
GaussRule gauss_hermite(int n);

// Weight x^alpha e^{-x} on (0, inf). Sum of weights is Gamma(alpha + 1).
GaussRule gauss_laguerre(int n, double alpha);

// Weight (1-x)^alpha (1+x)^beta on [-1, 1].
GaussRule gauss_jacobi(int n, double alpha, double beta);

// Adaptive Gauss-Kronrod 15(7) to absolute tolerance abs_tol on [a, b].
// Throws QuadratureError if the subdivision budget is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_intervals = 4000);

// Radial rule for thermal averages: sum_k W_k g(P_k) approximates
//   int_0^inf dP 4 pi P^2 mu_beta(P) g(P),
// exact for g even polynomial in P/p_beta up to the rule's degree. Two
// constructions, both with nodes bounded away from P = 0:
//   jacobi_truncated  Gauss-Jacobi weight sqrt(u) on u = (P/p_beta)^2 in
//                     [0, u_max]; default. Truncation tail ~ sqrt(u)e^{-u}.
//   laguerre_half     generalized Gauss-Laguerre alpha = 1/2 on (0, inf).
enum class RadialRuleKind { jacobi_truncated, laguerre_half };

struct RadialThermalRule {
  Eigen::ArrayXd momenta;  // P_k, ascending, all > 0
  Eigen::ArrayXd weights;  // W_k, include the thermal weight 4 pi P^2 mu_beta
};

RadialThermalRule radial_thermal_rule(int n, double p_beta,
                                      RadialRuleKind kind = RadialRuleKind::jacobi_truncated,
                                      double u_max = 21.0);

}  // namespace lrsim
