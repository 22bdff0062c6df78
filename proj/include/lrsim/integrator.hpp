#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lrsim/block_state.hpp"
#include "lrsim/generator.hpp"
#include "lrsim/timeseries.hpp"

namespace lrsim {

// Named extraction function sampled along the trajectory.
struct Observer {
  std::string name;
  bool is_real = false;
  std::function<std::complex<double>(const BlockDiagonalState&)> extract;

  static Observer block_element(std::string name, int alpha, int i, int j);
  static Observer marginal_element(std::string name, int i, int j);
  static Observer label_weight(std::string name, int alpha);
  static Observer total_trace(std::string name);
};

struct EvolutionConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  // fixed-step mode: either dt > 0 (last step clamped to hit t_end) or
  // steps > 0 (uniform dt = span / steps)
  double dt = 0.0;
  int steps = 0;
  // adaptive mode: RK4 step doubling against rtol * |rho|_max + atol
  bool adaptive = false;
  double rtol = 1e-8;
  double atol = 1e-10;
  int invariant_check_every = 1;
  Tolerances tol;
  std::vector<Observer> observers;
};

struct InvariantSummary {
  double initial_trace = 0.0;
  double max_trace_drift = 0.0;
  double max_negativity = 0.0;   // -min eigenvalue seen, clamped at 0
  double max_herm_defect = 0.0;
};

struct EvolveResult {
  TimeSeries series;
  BlockDiagonalState final_state;
  InvariantSummary invariants;
  long accepted_steps = 0;
};

// One classical RK4 step; blocks re-symmetrized. Throws IntegrationError on
// NaN/Inf in the derivative.
BlockDiagonalState step_rk4(const GeneralizedLindbladGenerator& gen,
                            const BlockDiagonalState& state, double dt);

// Deterministic trajectory with observer channels sampled at t_start and at
// every accepted step. Positivity is monitored, never enforced: a breach
// beyond 100x tolerance aborts with a diagnostic.
EvolveResult evolve(const GeneralizedLindbladGenerator& gen,
                    const BlockDiagonalState& state0, const EvolutionConfig& config);

}  // namespace lrsim
