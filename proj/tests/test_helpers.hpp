#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "lrsim/block_state.hpp"
#include "lrsim/generator.hpp"
#include "lrsim/label_space.hpp"

namespace lrsim::testing {

inline Eigen::MatrixXcd random_complex(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = {u(rng), u(rng)};
  return m;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int n) {
  const Eigen::MatrixXcd m = random_complex(rng, n);
  return 0.5 * (m + m.adjoint().eval());
}

inline Eigen::MatrixXcd random_density(std::mt19937_64& rng, int n) {
  const Eigen::MatrixXcd a = random_complex(rng, n);
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline LabelSpace random_space(std::mt19937_64& rng, int n_labels,
                               bool unit_weights = false) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<Label> labels(n_labels);
  for (int i = 0; i < n_labels; ++i)
    labels[i] = Label{i, std::nullopt, unit_weights ? 1.0 : u(rng)};
  return LabelSpace(std::move(labels));
}

// valid random state: positive blocks scaled so the weighted trace is one
inline BlockDiagonalState random_state(std::mt19937_64& rng, const LabelSpace& space,
                                       int dim) {
  std::vector<Eigen::MatrixXcd> blocks(space.size());
  double total = 0.0;
  for (std::size_t a = 0; a < space.size(); ++a) {
    const Eigen::MatrixXcd m = random_complex(rng, dim);
    blocks[a] = m * m.adjoint();
    total += space.weight(a) * blocks[a].trace().real();
  }
  for (auto& b : blocks) b /= total;
  return {space, std::move(blocks)};
}

inline GeneralizedLindbladGenerator random_generator(std::mt19937_64& rng,
                                                     const LabelSpace& space, int dim,
                                                     int n_jumps) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(space.size()) - 1);
  std::vector<Eigen::MatrixXcd> hams(space.size());
  for (auto& h : hams) h = random_hermitian(rng, dim);
  std::vector<JumpTerm> jumps(n_jumps);
  for (int k = 0; k < n_jumps; ++k)
    jumps[k] = JumpTerm{pick(rng), pick(rng), k, 0.7 * random_complex(rng, dim)};
  return {space, std::move(hams), std::move(jumps)};
}

// Literal dense-embedding evaluation of the coupled equations: build the
// block matrices on H (x) C^labels with sqrt-weight scaling, apply the plain
// Lindblad formula, read off the diagonal blocks. Independent of the sparse
// per-label path under test.
inline BlockDerivative dense_reference_derivative(
    const GeneralizedLindbladGenerator& gen, const BlockDiagonalState& state) {
  const int L = static_cast<int>(state.size());
  const int n = static_cast<int>(state.dim());
  const int N = L * n;
  Eigen::MatrixXcd rho_big = Eigen::MatrixXcd::Zero(N, N);
  Eigen::MatrixXcd h_big = Eigen::MatrixXcd::Zero(N, N);
  for (int a = 0; a < L; ++a) {
    rho_big.block(a * n, a * n, n, n) = state.space().weight(a) * state.block(a);
    h_big.block(a * n, a * n, n, n) = gen.hamiltonians()[a];
  }
  const std::complex<double> im(0.0, 1.0);
  Eigen::MatrixXcd deriv = -im * (h_big * rho_big - rho_big * h_big);
  for (const JumpTerm& j : gen.jumps()) {
    Eigen::MatrixXcd r_big = Eigen::MatrixXcd::Zero(N, N);
    r_big.block(j.target * n, j.source * n, n, n) =
        std::sqrt(state.space().weight(j.target)) * j.op;
    const Eigen::MatrixXcd rdr = r_big.adjoint() * r_big;
    deriv += r_big * rho_big * r_big.adjoint() -
             0.5 * (rdr * rho_big + rho_big * rdr);
  }
  BlockDerivative out(L);
  for (int a = 0; a < L; ++a)
    out[a] = deriv.block(a * n, a * n, n, n) / state.space().weight(a);
  return out;
}

}  // namespace lrsim::testing
