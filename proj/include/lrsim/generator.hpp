#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "lrsim/block_state.hpp"
#include "lrsim/label_space.hpp"

namespace lrsim {

// One cross-label Lindblad operator R^{target,source}_channel, in units of
// rate^{1/2}. target == source terms leave the label populations decoupled.
struct JumpTerm {
  int target = 0;
  int source = 0;
  int channel = 0;
  Eigen::MatrixXcd op;
};

using BlockDerivative = std::vector<Eigen::MatrixXcd>;

// Generator of the coupled subcollection equations: per-label Hamiltonians
// (hbar folded in, commutator coefficient -i) plus a sparse list of jump
// terms. Immutable after construction; the state-independent loss matrices
//   loss[alpha] = sum_channel sum_beta w_beta R^{beta,alpha}^dag R^{beta,alpha}
// are precomputed here since they dominate tight integration loops.
class GeneralizedLindbladGenerator {
 public:
  GeneralizedLindbladGenerator(LabelSpace space,
                               std::vector<Eigen::MatrixXcd> hamiltonians,
                               std::vector<JumpTerm> jumps,
                               const Tolerances& tol = {});

  [[nodiscard]] const LabelSpace& space() const { return space_; }
  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] const std::vector<Eigen::MatrixXcd>& hamiltonians() const {
    return hamiltonians_;
  }
  [[nodiscard]] const std::vector<JumpTerm>& jumps() const { return jumps_; }
  [[nodiscard]] const Eigen::MatrixXcd& loss(std::size_t alpha) const {
    return loss_[alpha];
  }
  // Coarse magnitude of the generator, for step-size heuristics.
  [[nodiscard]] double rate_scale() const { return rate_scale_; }

  [[nodiscard]] const std::vector<std::vector<std::size_t>>& jumps_into(
      ) const { return by_target_; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& jumps_out_of(
      ) const { return by_source_; }

 private:
  LabelSpace space_;
  Eigen::Index dim_ = 0;
  std::vector<Eigen::MatrixXcd> hamiltonians_;
  std::vector<JumpTerm> jumps_;
  std::vector<Eigen::MatrixXcd> loss_;
  std::vector<std::vector<std::size_t>> by_target_;
  std::vector<std::vector<std::size_t>> by_source_;
  double rate_scale_ = 0.0;
};

// d rho_alpha / dt in the Schroedinger picture. Output blocks are
// re-symmetrized so rounding cannot break Hermiticity; the weighted trace of
// the output vanishes identically by the pairwise gain/loss structure.
BlockDerivative apply_schrodinger(const GeneralizedLindbladGenerator& gen,
                                  const BlockDiagonalState& state);

// d B_alpha / dt in the Heisenberg picture (dual via the pairing).
BlockDerivative apply_heisenberg(const GeneralizedLindbladGenerator& gen,
                                 const BlockDiagonalObservable& obs);

// Weighted trace sum_alpha w_alpha Tr M_alpha of a block family (used to
// check the trace-conservation contract on derivatives).
double weighted_trace(const LabelSpace& space, const BlockDerivative& blocks);

// Serialization mirrors the state JSON, adding hamiltonians and jumps.
nlohmann::json generator_to_json(const GeneralizedLindbladGenerator& gen);
GeneralizedLindbladGenerator generator_from_json(const nlohmann::json& j);

}  // namespace lrsim
