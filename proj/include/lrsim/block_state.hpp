#pragma once

#include <Eigen/Dense>
#include <complex>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "lrsim/label_space.hpp"

namespace lrsim {

struct Tolerances {
  double herm = 1e-10;   // Hermiticity defect, max-norm
  double pos = 1e-9;     // allowed negativity of eigenvalues
  double trace = 1e-8;   // deviation of weighted total trace from 1
};

// Family of subcollection matrices rho_alpha over a label space. Invariants
// (Hermiticity, positivity, weighted trace one) are physics contracts checked
// by validate(), not construction-enforced; the constructor checks shape only.
// Immutable after construction; all operations on it are pure.
class BlockDiagonalState {
 public:
  BlockDiagonalState(LabelSpace space, std::vector<Eigen::MatrixXcd> blocks);

  [[nodiscard]] const LabelSpace& space() const { return space_; }
  [[nodiscard]] Eigen::Index dim() const { return blocks_.empty() ? 0 : blocks_[0].rows(); }
  [[nodiscard]] std::size_t size() const { return blocks_.size(); }
  [[nodiscard]] const Eigen::MatrixXcd& block(std::size_t i) const { return blocks_[i]; }
  [[nodiscard]] const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }

 private:
  LabelSpace space_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

// Block diagonal bounded observable B = (B_1, ..., B_n), one Hermitian block
// per label.
class BlockDiagonalObservable {
 public:
  BlockDiagonalObservable(LabelSpace space, std::vector<Eigen::MatrixXcd> blocks);

  [[nodiscard]] const LabelSpace& space() const { return space_; }
  [[nodiscard]] Eigen::Index dim() const { return blocks_.empty() ? 0 : blocks_[0].rows(); }
  [[nodiscard]] const Eigen::MatrixXcd& block(std::size_t i) const { return blocks_[i]; }
  [[nodiscard]] const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }

 private:
  LabelSpace space_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

// Label-summed statistical operator w = sum_alpha w_alpha rho_alpha; its
// dynamics is the non-Markovian one.
Eigen::MatrixXcd marginalize(const BlockDiagonalState& state);

// Weighted total trace. Computed as the trace of marginalize(state) so that
// total_trace(marginalize(s)) == total_trace(s) holds bitwise: a single
// Kahan pass over labels per matrix entry, then a Kahan pass over the
// diagonal.
double total_trace(const BlockDiagonalState& state);

// Classical probability distribution p_alpha = w_alpha Tr rho_alpha.
Eigen::VectorXd label_weights(const BlockDiagonalState& state);

// Duality pairing <B, rho> = sum_alpha w_alpha Tr(B_alpha rho_alpha).
double pair(const BlockDiagonalObservable& obs, const BlockDiagonalState& state);

struct BlockDiagnostics {
  double min_eigenvalue = 0.0;
  double herm_defect = 0.0;  // max-norm of rho - rho^dagger
  double trace = 0.0;        // Re Tr rho_alpha
};

struct StateDiagnostics {
  std::vector<BlockDiagnostics> blocks;
  double total_trace = 0.0;
  double trace_deviation = 0.0;  // |total - 1|
  double min_eigenvalue = 0.0;
  double max_herm_defect = 0.0;
  bool hermitian_ok = true;
  bool positive_ok = true;
  bool trace_ok = true;
  [[nodiscard]] bool all_ok() const { return hermitian_ok && positive_ok && trace_ok; }
};

// Diagnostic only: reports violations against the tolerances, never throws
// on physics violations.
StateDiagnostics validate(const BlockDiagonalState& state, const Tolerances& tol = {});

// Snapshot serialization: {labels: [{index, coordinate?, weight}], blocks:
// [[[re, im], ...] ...]} with row-major blocks.
nlohmann::json state_to_json(const BlockDiagonalState& state);
BlockDiagonalState state_from_json(const nlohmann::json& j);

}  // namespace lrsim
