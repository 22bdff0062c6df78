#include "lrsim/generator.hpp"

#include <nlohmann/json.hpp>

#include "lrsim/errors.hpp"
#include "lrsim/kahan.hpp"

namespace lrsim {

GeneralizedLindbladGenerator::GeneralizedLindbladGenerator(
    LabelSpace space, std::vector<Eigen::MatrixXcd> hamiltonians,
    std::vector<JumpTerm> jumps, const Tolerances& tol)
    : space_(std::move(space)),
      hamiltonians_(std::move(hamiltonians)),
      jumps_(std::move(jumps)) {
  const std::size_t n_labels = space_.size();
  if (hamiltonians_.size() != n_labels)
    throw StructuralError("generator: one Hamiltonian per label required");
  dim_ = hamiltonians_[0].rows();
  for (const auto& h : hamiltonians_) {
    if (h.rows() != dim_ || h.cols() != dim_)
      throw StructuralError("generator: Hamiltonian dims inconsistent");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol.herm)
      throw StructuralError("generator: Hamiltonian not Hermitian within tolerance");
  }
  by_target_.assign(n_labels, {});
  by_source_.assign(n_labels, {});
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const JumpTerm& j = jumps_[k];
    if (j.target < 0 || j.target >= static_cast<int>(n_labels) || j.source < 0 ||
        j.source >= static_cast<int>(n_labels))
      throw StructuralError("generator: jump references invalid label");
    if (j.op.rows() != dim_ || j.op.cols() != dim_)
      throw StructuralError("generator: jump operator dims inconsistent");
    by_target_[j.target].push_back(k);
    by_source_[j.source].push_back(k);
  }
  // loss cache: loss[s] = sum over jumps out of s of w_target R^dag R
  loss_.assign(n_labels, Eigen::MatrixXcd::Zero(dim_, dim_));
  for (const JumpTerm& j : jumps_)
    loss_[j.source] += space_.weight(j.target) * (j.op.adjoint() * j.op);
  // positive semidefiniteness is automatic for sums of w R^dag R; the check
  // is a tripwire for NaN inputs
  for (std::size_t a = 0; a < n_labels; ++a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(loss_[a], Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = std::max(1.0, es.eigenvalues().maxCoeff());
    if (!(lo >= -1e-12 * hi))
      throw StructuralError("generator: loss matrix not positive semidefinite");
  }
  double scale = 0.0;
  for (std::size_t a = 0; a < n_labels; ++a)
    scale = std::max(scale, 2.0 * hamiltonians_[a].norm() + loss_[a].norm());
  for (const JumpTerm& j : jumps_)
    scale = std::max(scale, space_.weight(j.source) * j.op.squaredNorm());
  rate_scale_ = scale;
}

namespace {

void check_space(const GeneralizedLindbladGenerator& gen, const LabelSpace& sp,
                 Eigen::Index dim) {
  if (!gen.space().same_as(sp) || gen.dim() != dim)
    throw StructuralError("generator: state/observable lives on a different space");
}

}  // namespace

BlockDerivative apply_schrodinger(const GeneralizedLindbladGenerator& gen,
                                  const BlockDiagonalState& state) {
  check_space(gen, state.space(), state.dim());
  const std::complex<double> minus_i(0.0, -1.0);
  const std::size_t n_labels = state.size();
  BlockDerivative out(n_labels);
  for (std::size_t a = 0; a < n_labels; ++a) {
    const Eigen::MatrixXcd& rho = state.block(a);
    const Eigen::MatrixXcd& h = gen.hamiltonians()[a];
    Eigen::MatrixXcd d = minus_i * (h * rho - rho * h);
    d.noalias() -= 0.5 * (gen.loss(a) * rho + rho * gen.loss(a));
    for (std::size_t k : gen.jumps_into()[a]) {
      const JumpTerm& j = gen.jumps()[k];
      d.noalias() += gen.space().weight(j.source) *
                     (j.op * state.block(j.source) * j.op.adjoint());
    }
    out[a] = 0.5 * (d + d.adjoint().eval());
  }
  return out;
}

BlockDerivative apply_heisenberg(const GeneralizedLindbladGenerator& gen,
                                 const BlockDiagonalObservable& obs) {
  check_space(gen, obs.space(), obs.dim());
  const std::complex<double> plus_i(0.0, 1.0);
  const std::size_t n_labels = obs.space().size();
  BlockDerivative out(n_labels);
  for (std::size_t a = 0; a < n_labels; ++a) {
    const Eigen::MatrixXcd& b = obs.block(a);
    const Eigen::MatrixXcd& h = gen.hamiltonians()[a];
    Eigen::MatrixXcd d = plus_i * (h * b - b * h);
    d.noalias() -= 0.5 * (gen.loss(a) * b + b * gen.loss(a));
    for (std::size_t k : gen.jumps_out_of()[a]) {
      const JumpTerm& j = gen.jumps()[k];
      d.noalias() += gen.space().weight(j.target) *
                     (j.op.adjoint() * obs.block(j.target) * j.op);
    }
    out[a] = 0.5 * (d + d.adjoint().eval());
  }
  return out;
}

double weighted_trace(const LabelSpace& space, const BlockDerivative& blocks) {
  KahanReal acc;
  for (std::size_t a = 0; a < blocks.size(); ++a)
    acc.add(space.weight(a) * blocks[a].trace().real());
  return acc.value();
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = {j[r][c][0].get<double>(), j[r][c][1].get<double>()};
  return m;
}

}  // namespace

nlohmann::json generator_to_json(const GeneralizedLindbladGenerator& gen) {
  nlohmann::json labels = nlohmann::json::array();
  for (const Label& l : gen.space().labels()) {
    nlohmann::json jl{{"index", l.index}, {"weight", l.weight}};
    if (l.coordinate)
      jl["coordinate"] = {(*l.coordinate)[0], (*l.coordinate)[1], (*l.coordinate)[2]};
    labels.push_back(std::move(jl));
  }
  nlohmann::json hams = nlohmann::json::array();
  for (const auto& h : gen.hamiltonians()) hams.push_back(matrix_to_json(h));
  nlohmann::json jumps = nlohmann::json::array();
  for (const JumpTerm& j : gen.jumps())
    jumps.push_back({{"alpha", j.target},
                     {"beta", j.source},
                     {"lambda", j.channel},
                     {"matrix", matrix_to_json(j.op)}});
  return {{"labels", std::move(labels)},
          {"hamiltonians", std::move(hams)},
          {"jumps", std::move(jumps)}};
}

GeneralizedLindbladGenerator generator_from_json(const nlohmann::json& j) {
  std::vector<Label> labels;
  for (const auto& jl : j.at("labels")) {
    Label l;
    l.index = jl.at("index").get<int>();
    l.weight = jl.at("weight").get<double>();
    if (jl.contains("coordinate")) {
      const auto& c = jl["coordinate"];
      l.coordinate = Eigen::Vector3d(c[0].get<double>(), c[1].get<double>(),
                                     c[2].get<double>());
    }
    labels.push_back(std::move(l));
  }
  std::vector<Eigen::MatrixXcd> hams;
  for (const auto& jh : j.at("hamiltonians")) hams.push_back(matrix_from_json(jh));
  std::vector<JumpTerm> jumps;
  for (const auto& jj : j.at("jumps"))
    jumps.push_back(JumpTerm{jj.at("alpha").get<int>(), jj.at("beta").get<int>(),
                             jj.at("lambda").get<int>(),
                             matrix_from_json(jj.at("matrix"))});
  return {LabelSpace(std::move(labels)), std::move(hams), std::move(jumps)};
}

}  // namespace lrsim
