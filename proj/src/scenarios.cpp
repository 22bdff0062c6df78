#include "lrsim/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "lrsim/errors.hpp"
#include "lrsim/kahan.hpp"

namespace lrsim {

FrictionSpec::FrictionSpec(int n_levels, Fn xi, bool isotropic, std::string family)
    : n_(n_levels), fn_(std::move(xi)), isotropic_(isotropic), family_(std::move(family)) {
  if (n_ < 2) throw StructuralError("FrictionSpec: need at least two levels");
  if (!fn_) throw StructuralError("FrictionSpec: empty callable");
}

Eigen::MatrixXcd FrictionSpec::matrix(const Eigen::Vector3d& P) const {
  Eigen::MatrixXcd xi(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) xi(i, k) = fn_(i, k, P);
  return xi;
}

std::complex<double> FrictionSpec::coherence_rate(const Eigen::Vector3d& P) const {
  return 0.5 * fn_(0, 0, P) + 0.5 * fn_(1, 1, P) - fn_(0, 1, P);
}

FrictionSpec FrictionSpec::constant(double eta) {
  return {2,
          [eta](int i, int k, const Eigen::Vector3d&) {
            return i == k ? std::complex<double>(eta, 0.0) : std::complex<double>(0.0);
          },
          true, "constant"};
}

FrictionSpec FrictionSpec::uniform(double eta) {
  return {2,
          [eta](int, int, const Eigen::Vector3d&) {
            return std::complex<double>(eta, 0.0);
          },
          true, "uniform"};
}

FrictionSpec FrictionSpec::quadratic(double a) {
  return {2,
          [a](int i, int k, const Eigen::Vector3d& P) {
            return i == k ? std::complex<double>(a * P.squaredNorm(), 0.0)
                          : std::complex<double>(0.0);
          },
          true, "quadratic"};
}

FrictionSpec FrictionSpec::inverse_quadratic(double b) {
  return {2,
          [b](int i, int k, const Eigen::Vector3d& P) {
            return i == k ? std::complex<double>(b / P.squaredNorm(), 0.0)
                          : std::complex<double>(0.0);
          },
          true, "inverse_quadratic"};
}

LabelSpace radial_thermal_space(const RadialThermalRule& rule,
                                const GasParameters& gas) {
  gas.check();
  std::vector<Eigen::Vector3d> coords(rule.momenta.size());
  std::vector<double> weights(rule.momenta.size());
  for (Eigen::Index k = 0; k < rule.momenta.size(); ++k) {
    coords[k] = Eigen::Vector3d(0.0, 0.0, rule.momenta[k]);
    weights[k] = rule.weights[k] / maxwell_boltzmann(coords[k], gas);
  }
  return LabelSpace::grid(coords, weights);
}

BlockDiagonalState thermal_radial_state(const LabelSpace& space,
                                        const GasParameters& gas,
                                        const Eigen::MatrixXcd& sigma) {
  gas.check();
  if (std::abs(sigma.trace().real() - 1.0) > 1e-10)
    throw StructuralError("thermal_radial_state: sigma must have unit trace");
  std::vector<Eigen::MatrixXcd> blocks(space.size());
  for (std::size_t k = 0; k < space.size(); ++k)
    blocks[k] = maxwell_boltzmann(space.coordinate(k), gas) * sigma;
  return {space, std::move(blocks)};
}

GeneralizedLindbladGenerator build_internal_coherence_generator(
    const FrictionSpec& friction, const LabelSpace& grid) {
  if (!grid.has_coordinates())
    throw StructuralError(
        "build_internal_coherence_generator: grid must carry momentum coordinates");
  const int n = friction.levels();
  std::vector<Eigen::MatrixXcd> hams(grid.size(), Eigen::MatrixXcd::Zero(n, n));
  std::vector<JumpTerm> jumps;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const Eigen::Vector3d& P = grid.coordinate(a);
    const Eigen::MatrixXcd xi = friction.matrix(P);
    if ((xi - xi.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw StructuralError(
          "build_internal_coherence_generator: xi_ik must be Hermitian");
    for (int i = 0; i < n; ++i)
      if (xi(i, i).real() < 0.0)
        throw StructuralError(
            "build_internal_coherence_generator: negative diagonal xi at grid point " +
            std::to_string(a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(xi);
    const double top = std::max(1e-300, es.eigenvalues().maxCoeff());
    int channel = 0;
    for (int v = 0; v < n; ++v) {
      const double s = es.eigenvalues()[v];
      if (s < -1e-10 * top)
        throw StructuralError(
            "build_internal_coherence_generator: xi matrix not positive "
            "semidefinite at grid point " +
            std::to_string(a));
      if (s <= 1e-14 * top) continue;
      // jump weights supply the label measure, so divide it back out: the
      // xi are genuine per-label rates
      const double amp = std::sqrt(s / grid.weight(a));
      Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) r(i, i) = amp * es.eigenvectors()(i, v);
      jumps.push_back(JumpTerm{static_cast<int>(a), static_cast<int>(a), channel++,
                               std::move(r)});
    }
  }
  return {grid, std::move(hams), std::move(jumps)};
}

namespace {

DecayCurve decay_from_rule(const FrictionSpec& friction, const Eigen::ArrayXd& momenta,
                           const Eigen::ArrayXd& weights,
                           const std::vector<double>& t_grid) {
  DecayCurve curve;
  curve.times = t_grid;
  curve.values.resize(t_grid.size());
  for (std::size_t s = 0; s < t_grid.size(); ++s) {
    KahanComplex acc;
    for (Eigen::Index k = 0; k < momenta.size(); ++k) {
      const Eigen::Vector3d P(0.0, 0.0, momenta[k]);
      acc.add(weights[k] * std::exp(-friction.coherence_rate(P) * t_grid[s]));
    }
    curve.values[s] = acc.value();
  }
  return curve;
}

DecayCurve decay_tensor_hermite(const FrictionSpec& friction, const GasParameters& gas,
                                const std::vector<double>& t_grid, int order) {
  const GaussRule gh = gauss_hermite(order);
  const double pb = gas.p_beta();
  const double norm = std::pow(std::numbers::pi, -1.5);
  DecayCurve curve;
  curve.times = t_grid;
  curve.values.resize(t_grid.size());
  for (std::size_t s = 0; s < t_grid.size(); ++s) {
    KahanComplex acc;
    for (int a = 0; a < gh.size(); ++a)
      for (int b = 0; b < gh.size(); ++b)
        for (int c = 0; c < gh.size(); ++c) {
          const Eigen::Vector3d P(pb * gh.nodes[a], pb * gh.nodes[b],
                                  pb * gh.nodes[c]);
          const double w = gh.weights[a] * gh.weights[b] * gh.weights[c] * norm;
          acc.add(w * std::exp(-friction.coherence_rate(P) * t_grid[s]));
        }
    curve.values[s] = acc.value();
  }
  return curve;
}

double max_curve_diff(const DecayCurve& a, const DecayCurve& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

}  // namespace

DecayCurve coherence_decay_curve(const FrictionSpec& friction, const GasParameters& gas,
                                 const std::vector<double>& t_grid,
                                 const RadialQuadratureSpec& quad,
                                 bool convergence_check) {
  gas.check();
  DecayCurve curve;
  if (friction.isotropic()) {
    const RadialThermalRule rule =
        radial_thermal_rule(quad.order, gas.p_beta(), quad.kind, quad.u_max);
    curve = decay_from_rule(friction, rule.momenta, rule.weights, t_grid);
    if (convergence_check) {
      const RadialThermalRule fine =
          radial_thermal_rule(2 * quad.order, gas.p_beta(), quad.kind, quad.u_max);
      const DecayCurve ref = decay_from_rule(friction, fine.momenta, fine.weights, t_grid);
      const double change = max_curve_diff(curve, ref);
      if (change > 1e-8)
        throw QuadratureError("coherence_decay_curve: order doubling changed result by " +
                              std::to_string(change));
    }
  } else {
    curve = decay_tensor_hermite(friction, gas, t_grid, quad.order);
    if (convergence_check) {
      const DecayCurve ref = decay_tensor_hermite(friction, gas, t_grid, 2 * quad.order);
      const double change = max_curve_diff(curve, ref);
      if (change > 1e-8)
        throw QuadratureError("coherence_decay_curve: order doubling changed result by " +
                              std::to_string(change));
    }
  }
  curve.meta = "coherence_decay_curve:" + friction.family();
  return curve;
}

// ---------------------------------------------------------------------------

KickDensity KickDensity::isotropic_gaussian(double sigma) {
  if (!(sigma > 0.0)) throw StructuralError("KickDensity: sigma must be > 0");
  KickDensity d;
  d.kind = Kind::gaussian;
  d.sigma = sigma;
  return d;
}

KickDensity KickDensity::discrete_mixture(
    std::vector<std::pair<Eigen::Vector3d, double>> atoms) {
  KickDensity d;
  d.kind = Kind::discrete;
  d.atoms = std::move(atoms);
  d.check();
  return d;
}

KickDensity KickDensity::far_field() {
  KickDensity d;
  d.kind = Kind::far_field;
  return d;
}

void KickDensity::check() const {
  if (kind == Kind::discrete) {
    KahanReal mass;
    for (const auto& [q, p] : atoms) {
      if (p < 0.0) throw StructuralError("KickDensity: negative atom probability");
      mass.add(p);
    }
    if (std::abs(mass.value() - 1.0) > 1e-10)
      throw StructuralError("KickDensity: discrete mixture not normalized");
  }
}

std::complex<double> characteristic_function(const KickDensity& density,
                                             const Eigen::Vector3d& d) {
  switch (density.kind) {
    case KickDensity::Kind::gaussian:
      return {std::exp(-0.5 * density.sigma * density.sigma * d.squaredNorm()), 0.0};
    case KickDensity::Kind::discrete: {
      KahanComplex acc;
      for (const auto& [q, p] : density.atoms)
        acc.add(p * std::exp(std::complex<double>(0.0, q.dot(d))));
      return acc.value();
    }
    case KickDensity::Kind::far_field:
      return d.squaredNorm() == 0.0 ? std::complex<double>(1.0, 0.0)
                                    : std::complex<double>(0.0, 0.0);
  }
  return {0.0, 0.0};
}

KickSpec KickSpec::diagonal(std::vector<KickChannel> channels) {
  if (channels.empty()) throw StructuralError("KickSpec: no channels");
  KickSpec spec;
  spec.n_ = static_cast<int>(channels.size());
  spec.diagonal_ = true;
  spec.rates_ = Eigen::MatrixXd::Zero(spec.n_, spec.n_);
  spec.densities_.assign(spec.n_, std::vector<KickDensity>(spec.n_, KickDensity::far_field()));
  for (int r = 0; r < spec.n_; ++r) {
    if (channels[r].rate < 0.0) throw StructuralError("KickSpec: negative rate");
    channels[r].density.check();
    spec.rates_(r, r) = channels[r].rate;
    spec.densities_[r][r] = channels[r].density;
  }
  return spec;
}

KickSpec KickSpec::cross(Eigen::MatrixXd rates,
                         std::vector<std::vector<KickDensity>> densities) {
  const int n = static_cast<int>(rates.rows());
  if (rates.cols() != n || static_cast<int>(densities.size()) != n)
    throw StructuralError("KickSpec: rate matrix must be square with matching densities");
  if ((rates.array() < 0.0).any())
    throw StructuralError("KickSpec: rates must be >= 0");
  KickSpec spec;
  spec.n_ = n;
  spec.diagonal_ = true;
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(densities[j].size()) != n)
      throw StructuralError("KickSpec: ragged density matrix");
    for (int r = 0; r < n; ++r) {
      densities[j][r].check();
      if (j != r && rates(j, r) != 0.0) spec.diagonal_ = false;
    }
  }
  spec.rates_ = std::move(rates);
  spec.densities_ = std::move(densities);
  return spec;
}

Eigen::MatrixXcd build_kick_coherence_ode(const Eigen::Vector3d& d,
                                          const KickSpec& kicks) {
  const int n = kicks.labels();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      if (kicks.rate(r, j) != 0.0)
        a(r, j) += kicks.rate(r, j) * characteristic_function(kicks.density(r, j), d);
    }
    for (int k = 0; k < n; ++k) a(r, r) -= kicks.rate(k, r);
  }
  return a;
}

std::vector<Eigen::VectorXcd> evolve_linear(const Eigen::MatrixXcd& A,
                                            const Eigen::VectorXcd& c0,
                                            const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw StructuralError("evolve_linear: empty time grid");
  const double scale = std::max(A.cwiseAbs().maxCoeff() * A.rows(), 1e-300);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(t_grid.size());
  Eigen::VectorXcd c = c0;
  double t = t_grid[0];
  out.push_back(c);
  const auto rk4 = [&A](const Eigen::VectorXcd& y, double h) {
    const Eigen::VectorXcd k1 = A * y;
    const Eigen::VectorXcd k2 = A * (y + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = A * (y + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = A * (y + h * k3);
    return (y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
  };
  for (std::size_t s = 1; s < t_grid.size(); ++s) {
    const double span = t_grid[s] - t;
    if (span < 0.0) throw StructuralError("evolve_linear: times must be increasing");
    if (span > 0.0) {
      const long sub = std::max(1L, static_cast<long>(std::ceil(span * scale / 0.01)));
      const double h = span / static_cast<double>(sub);
      for (long k = 0; k < sub; ++k) c = rk4(c, h);
    }
    t = t_grid[s];
    out.push_back(c);
  }
  return out;
}

PreparationSpec PreparationSpec::internal(const Eigen::MatrixXcd& sigma) {
  if (std::abs(sigma.trace().real() - 1.0) > 1e-10)
    throw StructuralError("PreparationSpec: sigma must have unit trace");
  PreparationSpec p;
  p.sigma = sigma;
  return p;
}

PreparationSpec PreparationSpec::label_weights(std::vector<double> weights) {
  KahanReal sum;
  for (double w : weights) {
    if (w < 0.0) throw StructuralError("PreparationSpec: negative weight");
    sum.add(w);
  }
  if (std::abs(sum.value() - 1.0) > 1e-10)
    throw StructuralError("PreparationSpec: weights must sum to 1");
  PreparationSpec p;
  p.weights = std::move(weights);
  return p;
}

PreparationSpec PreparationSpec::geometric(const GeometricFamily& family) {
  PreparationSpec p;
  p.weights = family.weights;
  // truncation tail < 1e-12 by construction; keep the paper's weights
  double sum = 0.0;
  for (double w : p.weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-12)
    throw StructuralError("PreparationSpec: geometric truncation tail too large");
  return p;
}

DecayCurve visibility_decay(const PreparationSpec& prep, const KickSpec& kicks,
                            const Eigen::Vector3d& d,
                            const std::vector<double>& t_grid) {
  if (!kicks.is_diagonal())
    throw StructuralError("visibility_decay: diagonal kick model required");
  if (static_cast<int>(prep.weights.size()) != kicks.labels())
    throw StructuralError("visibility_decay: weight/channel count mismatch");
  const int n = kicks.labels();
  std::vector<std::complex<double>> z(n);
  for (int r = 0; r < n; ++r)
    z[r] = kicks.rate(r, r) *
           (1.0 - characteristic_function(kicks.density(r, r), d));
  DecayCurve curve;
  curve.times = t_grid;
  curve.values.resize(t_grid.size());
  for (std::size_t s = 0; s < t_grid.size(); ++s) {
    KahanComplex acc;
    for (int r = 0; r < n; ++r)
      acc.add(prep.weights[r] * std::exp(-z[r] * t_grid[s]));
    curve.values[s] = acc.value();
  }
  curve.meta = "visibility_decay";
  return curve;
}

// ---------------------------------------------------------------------------

LabelSpace lattice_space_1d(int count, double spacing) {
  if (count < 2 || !(spacing > 0.0))
    throw StructuralError("lattice_space_1d: need count >= 2, spacing > 0");
  std::vector<Eigen::Vector3d> coords(count);
  std::vector<double> weights(count, spacing);
  const double mid = 0.5 * (count - 1);
  for (int k = 0; k < count; ++k)
    coords[k] = Eigen::Vector3d(0.0, 0.0, (k - mid) * spacing);
  return LabelSpace::grid(coords, weights);
}

namespace {

int find_grid_index(const LabelSpace& grid, const Eigen::Vector3d& p) {
  for (std::size_t k = 0; k < grid.size(); ++k)
    if ((grid.coordinate(k) - p).norm() <= 1e-9 * (1.0 + p.norm()))
      return static_cast<int>(k);
  return -1;
}

}  // namespace

GeneralizedLindbladGenerator build_bloch_boltzmann_generator(
    const LabelSpace& grid, const RateCoefficientTable& table,
    const InternalLevels& levels) {
  if (!grid.has_coordinates())
    throw StructuralError("build_bloch_boltzmann_generator: grid needs coordinates");
  const int n = levels.n();
  const double herm_defect = table.hermiticity_defect();
  double table_scale = 0.0;
  for (const RateTablePoint& pt : table.points())
    for (const RateEntry& e : pt.entries)
      table_scale = std::max(table_scale, std::abs(e.value));
  if (herm_defect > 1e-10 * std::max(1.0, table_scale))
    throw StructuralError("build_bloch_boltzmann_generator: table not Hermitian");

  std::vector<Eigen::MatrixXcd> hams(grid.size(), Eigen::MatrixXcd::Zero(n, n));
  std::vector<JumpTerm> jumps;

  for (const RateTablePoint& pt : table.points()) {
    const int target = find_grid_index(grid, pt.P);
    if (target < 0)
      throw StructuralError(
          "build_bloch_boltzmann_generator: table P point not on the grid");
    const int source = find_grid_index(grid, pt.P - pt.Q);
    if (source < 0) continue;  // transfer leaves the truncated lattice

    // group channel pairs by transition energy class
    std::vector<double> classes;
    for (const RateEntry& e : pt.entries) {
      const double eps = levels.epsilon(e.i, e.j);
      bool found = false;
      for (double c : classes)
        if (std::abs(c - eps) <= 1e-12) found = true;
      if (!found) classes.push_back(eps);
    }
    int channel = 0;
    for (double eps : classes) {
      // channel pairs (i, j) in this class, in deterministic order
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (std::abs(levels.epsilon(i, j) - eps) <= 1e-12)
            pairs.emplace_back(i, j);
      const int m = static_cast<int>(pairs.size());
      Eigen::MatrixXcd composite = Eigen::MatrixXcd::Zero(m, m);
      for (const RateEntry& e : pt.entries) {
        if (std::abs(levels.epsilon(e.i, e.j) - eps) > 1e-12) continue;
        int row = -1, col = -1;
        for (int p = 0; p < m; ++p) {
          if (pairs[p].first == e.i && pairs[p].second == e.j) row = p;
          if (pairs[p].first == e.k && pairs[p].second == e.l) col = p;
        }
        if (row >= 0 && col >= 0) composite(row, col) = e.value;
      }
      composite = 0.5 * (composite + composite.adjoint().eval());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(composite);
      const double top = std::max(es.eigenvalues().maxCoeff(), 1e-300);
      for (int v = 0; v < m; ++v) {
        const double s = es.eigenvalues()[v];
        if (s < -1e-10 * top)
          throw StructuralError(
              "build_bloch_boltzmann_generator: rate matrix not positive "
              "semidefinite");
        if (s <= 1e-14 * top) continue;
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
        for (int p = 0; p < m; ++p)
          r += es.eigenvectors()(p, v) * levels.basis_map(pairs[p].first, pairs[p].second);
        r *= std::sqrt(s);
        jumps.push_back(JumpTerm{target, source, channel++, std::move(r)});
      }
    }
  }
  return {grid, std::move(hams), std::move(jumps)};
}

}  // namespace lrsim
