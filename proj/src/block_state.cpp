#include "lrsim/block_state.hpp"

#include <nlohmann/json.hpp>

#include "lrsim/errors.hpp"
#include "lrsim/kahan.hpp"

namespace lrsim {

namespace {

void check_blocks(const LabelSpace& space, const std::vector<Eigen::MatrixXcd>& blocks,
                  const char* what) {
  if (blocks.size() != space.size())
    throw StructuralError(std::string(what) + ": block count does not match label count");
  const Eigen::Index n = blocks.empty() ? 0 : blocks[0].rows();
  for (const auto& b : blocks)
    if (b.rows() != n || b.cols() != n)
      throw StructuralError(std::string(what) + ": blocks must be square with equal dims");
}

}  // namespace

BlockDiagonalState::BlockDiagonalState(LabelSpace space,
                                       std::vector<Eigen::MatrixXcd> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  check_blocks(space_, blocks_, "BlockDiagonalState");
}

BlockDiagonalObservable::BlockDiagonalObservable(LabelSpace space,
                                                 std::vector<Eigen::MatrixXcd> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  check_blocks(space_, blocks_, "BlockDiagonalObservable");
}

Eigen::MatrixXcd marginalize(const BlockDiagonalState& state) {
  const Eigen::Index n = state.dim();
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      KahanComplex acc;
      for (std::size_t a = 0; a < state.size(); ++a)
        acc.add(state.space().weight(a) * state.block(a)(r, c));
      out(r, c) = acc.value();
    }
  }
  return out;
}

double total_trace(const BlockDiagonalState& state) {
  const Eigen::MatrixXcd w = marginalize(state);
  KahanReal acc;
  for (Eigen::Index i = 0; i < w.rows(); ++i) acc.add(w(i, i).real());
  return acc.value();
}

Eigen::VectorXd label_weights(const BlockDiagonalState& state) {
  Eigen::VectorXd p(state.size());
  for (std::size_t a = 0; a < state.size(); ++a) {
    KahanReal tr;
    for (Eigen::Index i = 0; i < state.dim(); ++i) tr.add(state.block(a)(i, i).real());
    p[static_cast<Eigen::Index>(a)] = state.space().weight(a) * tr.value();
  }
  return p;
}

double pair(const BlockDiagonalObservable& obs, const BlockDiagonalState& state) {
  if (!obs.space().same_as(state.space()) || obs.dim() != state.dim())
    throw StructuralError("pair: observable and state live on different spaces");
  KahanReal acc;
  for (std::size_t a = 0; a < state.size(); ++a) {
    const std::complex<double> tr =
        (obs.block(a).transpose().cwiseProduct(state.block(a))).sum();
    acc.add(state.space().weight(a) * tr.real());
  }
  return acc.value();
}

StateDiagnostics validate(const BlockDiagonalState& state, const Tolerances& tol) {
  StateDiagnostics diag;
  diag.blocks.reserve(state.size());
  double min_eig = 0.0;
  double max_defect = 0.0;
  for (std::size_t a = 0; a < state.size(); ++a) {
    const Eigen::MatrixXcd& rho = state.block(a);
    BlockDiagnostics b;
    b.herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    b.trace = rho.trace().real();
    const Eigen::MatrixXcd sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
    b.min_eigenvalue = es.eigenvalues().minCoeff();
    min_eig = std::min(min_eig, b.min_eigenvalue);
    max_defect = std::max(max_defect, b.herm_defect);
    diag.blocks.push_back(b);
  }
  diag.total_trace = total_trace(state);
  diag.trace_deviation = std::abs(diag.total_trace - 1.0);
  diag.min_eigenvalue = min_eig;
  diag.max_herm_defect = max_defect;
  diag.hermitian_ok = max_defect <= tol.herm;
  diag.positive_ok = min_eig >= -tol.pos;
  diag.trace_ok = diag.trace_deviation <= tol.trace;
  return diag;
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

nlohmann::json state_to_json(const BlockDiagonalState& state) {
  nlohmann::json labels = nlohmann::json::array();
  for (const Label& l : state.space().labels()) {
    nlohmann::json jl{{"index", l.index}, {"weight", l.weight}};
    if (l.coordinate)
      jl["coordinate"] = {(*l.coordinate)[0], (*l.coordinate)[1], (*l.coordinate)[2]};
    labels.push_back(std::move(jl));
  }
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : state.blocks()) blocks.push_back(matrix_to_json(b));
  return {{"labels", std::move(labels)}, {"blocks", std::move(blocks)}};
}

BlockDiagonalState state_from_json(const nlohmann::json& j) {
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
  std::vector<Eigen::MatrixXcd> blocks;
  for (const auto& jb : j.at("blocks")) blocks.push_back(matrix_from_json(jb));
  return {LabelSpace(std::move(labels)), std::move(blocks)};
}

}  // namespace lrsim
