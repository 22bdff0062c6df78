#include "lrsim/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "lrsim/errors.hpp"

namespace lrsim {

namespace {

// Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix are
// the nodes, weights come from the squared first eigenvector components.
GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                       double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) jac(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    jac(i, i + 1) = offdiag[i];
    jac(i + 1, i) = offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussRule rule;
  rule.nodes = es.eigenvalues().array();
  rule.weights = mu0 * es.eigenvectors().row(0).array().square().transpose();
  return rule;
}

}  // namespace

GaussRule gauss_hermite(int n) {
  if (n < 1) throw StructuralError("gauss_hermite: order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k / 2.0);
  return golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

GaussRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw StructuralError("gauss_laguerre: order must be >= 1");
  if (alpha <= -1.0) throw StructuralError("gauss_laguerre: alpha must be > -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n - 1 > 0 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
  return golub_welsch(diag, off, std::tgamma(alpha + 1.0));
}

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw StructuralError("gauss_jacobi: order must be >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw StructuralError("gauss_jacobi: parameters must be > -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n - 1 > 0 ? n - 1 : 0);
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
           ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) *
            (2.0 * k + ab - 1.0));
    }
    off[k - 1] = std::sqrt(b2);
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) *
                     std::tgamma(beta + 1.0) / std::tgamma(ab + 2.0);
  return golub_welsch(diag, off, mu0);
}

namespace {

// Gauss-Kronrod 15(7) abscissae/weights on [-1,1] (QUADPACK values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    res_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
  }
  res_k *= h;
  res_g *= h;
  // QUADPACK-style sharpened estimate for rapidly converging panels
  const double diff = std::fabs(res_k - res_g);
  const double sharp = std::pow(200.0 * diff, 1.5);
  return {res_k, sharp < diff ? sharp : diff};
}

struct Interval {
  double a, b, value, error;
};

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_intervals) {
  std::vector<Interval> heap;
  const auto first = gk15(f, a, b);
  heap.push_back({a, b, first.kronrod, first.error});
  double total = first.kronrod;
  double total_err = first.error;
  while (total_err > abs_tol) {
    if (static_cast<int>(heap.size()) >= max_intervals)
      throw QuadratureError("integrate_adaptive: interval budget exhausted, error " +
                            std::to_string(total_err) + " > tol " +
                            std::to_string(abs_tol));
    // bisect the interval with the largest error estimate
    std::size_t worst = 0;
    for (std::size_t i = 1; i < heap.size(); ++i)
      if (heap[i].error > heap[worst].error) worst = i;
    const Interval iv = heap[worst];
    const double mid = 0.5 * (iv.a + iv.b);
    const auto left = gk15(f, iv.a, mid);
    const auto right = gk15(f, mid, iv.b);
    total += left.kronrod + right.kronrod - iv.value;
    total_err += left.error + right.error - iv.error;
    heap[worst] = {iv.a, mid, left.kronrod, left.error};
    heap.push_back({mid, iv.b, right.kronrod, right.error});
    if (!std::isfinite(total))
      throw QuadratureError("integrate_adaptive: non-finite integrand");
  }
  return total;
}

RadialThermalRule radial_thermal_rule(int n, double p_beta, RadialRuleKind kind,
                                      double u_max) {
  if (n < 1) throw StructuralError("radial_thermal_rule: order must be >= 1");
  if (p_beta <= 0.0) throw StructuralError("radial_thermal_rule: p_beta must be > 0");
  // Substituting u = (P/p_beta)^2 turns the thermal radial measure into
  //   int 4 pi P^2 mu_beta(P) g dP = (2/sqrt(pi)) int sqrt(u) e^{-u} g du.
  const double norm = 2.0 / std::sqrt(std::numbers::pi);
  RadialThermalRule out;
  if (kind == RadialRuleKind::laguerre_half) {
    const GaussRule gl = gauss_laguerre(n, 0.5);
    out.momenta = p_beta * gl.nodes.sqrt();
    out.weights = norm * gl.weights;
  } else {
    if (u_max <= 0.0) throw StructuralError("radial_thermal_rule: u_max must be > 0");
    // weight sqrt(u) on [0, u_max]: u = u_max (1+x)/2 with Jacobi beta = 1/2
    const GaussRule gj = gauss_jacobi(n, 0.0, 0.5);
    const Eigen::ArrayXd u = 0.5 * u_max * (gj.nodes + 1.0);
    const double scale = std::pow(0.5 * u_max, 1.5);
    out.momenta = p_beta * u.sqrt();
    out.weights = norm * scale * gj.weights * (-u).exp();
  }
  return out;
}

}  // namespace lrsim
