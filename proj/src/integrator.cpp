#include "lrsim/integrator.hpp"

#include <cmath>
#include <sstream>

#include "lrsim/errors.hpp"
#include "lrsim/kahan.hpp"

namespace lrsim {

Observer Observer::block_element(std::string name, int alpha, int i, int j) {
  return {std::move(name), false,
          [alpha, i, j](const BlockDiagonalState& s) { return s.block(alpha)(i, j); }};
}

Observer Observer::marginal_element(std::string name, int i, int j) {
  return {std::move(name), false, [i, j](const BlockDiagonalState& s) {
            KahanComplex acc;
            for (std::size_t a = 0; a < s.size(); ++a)
              acc.add(s.space().weight(a) * s.block(a)(i, j));
            return acc.value();
          }};
}

Observer Observer::label_weight(std::string name, int alpha) {
  return {std::move(name), true, [alpha](const BlockDiagonalState& s) {
            KahanReal tr;
            for (Eigen::Index i = 0; i < s.dim(); ++i)
              tr.add(s.block(alpha)(i, i).real());
            return std::complex<double>(s.space().weight(alpha) * tr.value(), 0.0);
          }};
}

Observer Observer::total_trace(std::string name) {
  return {std::move(name), true, [](const BlockDiagonalState& s) {
            return std::complex<double>(lrsim::total_trace(s), 0.0);
          }};
}

namespace {

using Blocks = std::vector<Eigen::MatrixXcd>;

Blocks rk4_blocks(const GeneralizedLindbladGenerator& gen, const LabelSpace& space,
                  const Blocks& y, double dt) {
  const BlockDiagonalState s1(space, y);
  const BlockDerivative k1 = apply_schrodinger(gen, s1);
  Blocks tmp(y.size());
  for (std::size_t a = 0; a < y.size(); ++a) tmp[a] = y[a] + (0.5 * dt) * k1[a];
  const BlockDerivative k2 = apply_schrodinger(gen, {space, tmp});
  for (std::size_t a = 0; a < y.size(); ++a) tmp[a] = y[a] + (0.5 * dt) * k2[a];
  const BlockDerivative k3 = apply_schrodinger(gen, {space, tmp});
  for (std::size_t a = 0; a < y.size(); ++a) tmp[a] = y[a] + dt * k3[a];
  const BlockDerivative k4 = apply_schrodinger(gen, {space, tmp});
  Blocks out(y.size());
  for (std::size_t a = 0; a < y.size(); ++a) {
    Eigen::MatrixXcd next =
        y[a] + (dt / 6.0) * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    out[a] = 0.5 * (next + next.adjoint().eval());
    if (!out[a].allFinite())
      throw IntegrationError("step_rk4: non-finite block at label " +
                             std::to_string(a) + " (dt = " + std::to_string(dt) + ")");
  }
  return out;
}

double max_block_norm(const Blocks& b) {
  double m = 0.0;
  for (const auto& x : b) m = std::max(m, x.cwiseAbs().maxCoeff());
  return m;
}

double max_block_diff(const Blocks& a, const Blocks& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

BlockDiagonalState step_rk4(const GeneralizedLindbladGenerator& gen,
                            const BlockDiagonalState& state, double dt) {
  if (!(dt > 0.0)) throw StructuralError("step_rk4: dt must be > 0");
  return {state.space(), rk4_blocks(gen, state.space(), state.blocks(), dt)};
}

EvolveResult evolve(const GeneralizedLindbladGenerator& gen,
                    const BlockDiagonalState& state0, const EvolutionConfig& config) {
  if (!(config.t_end > config.t_start))
    throw StructuralError("evolve: t_end must be > t_start");
  if (!config.adaptive && !(config.dt > 0.0) && config.steps <= 0)
    throw StructuralError("evolve: fixed-step mode needs dt > 0 or steps > 0");
  if (config.adaptive && (!(config.rtol > 0.0) || !(config.atol > 0.0)))
    throw StructuralError("evolve: adaptive mode needs rtol, atol > 0");
  if (!gen.space().same_as(state0.space()) || gen.dim() != state0.dim())
    throw StructuralError("evolve: generator/state space mismatch");

  const LabelSpace& space = state0.space();
  const double span = config.t_end - config.t_start;

  EvolveResult result{TimeSeries{}, state0, InvariantSummary{}, 0};
  TimeSeries& series = result.series;
  for (const Observer& o : config.observers)
    series.channels.push_back(Channel{o.name, o.is_real, {}});

  Blocks cur = state0.blocks();
  double t = config.t_start;

  const auto sample = [&](double at) {
    const BlockDiagonalState snap(space, cur);
    series.times.push_back(at);
    for (std::size_t i = 0; i < config.observers.size(); ++i)
      series.channels[i].samples.push_back(config.observers[i].extract(snap));
  };

  InvariantSummary& inv = result.invariants;
  inv.initial_trace = total_trace(state0);

  const auto check_invariants = [&](double at) {
    const BlockDiagonalState snap(space, cur);
    const StateDiagnostics d = validate(snap, config.tol);
    const double drift = std::abs(d.total_trace - inv.initial_trace);
    inv.max_trace_drift = std::max(inv.max_trace_drift, drift);
    inv.max_negativity = std::max(inv.max_negativity, std::max(0.0, -d.min_eigenvalue));
    inv.max_herm_defect = std::max(inv.max_herm_defect, d.max_herm_defect);
    if (drift > 100.0 * config.tol.trace) {
      std::ostringstream os;
      os << "evolve: trace drift " << drift << " exceeds 100x tolerance at t = " << at;
      throw IntegrationError(os.str());
    }
    if (-d.min_eigenvalue > 100.0 * config.tol.pos) {
      std::ostringstream os;
      os << "evolve: negativity " << -d.min_eigenvalue
         << " exceeds 100x tolerance at t = " << at;
      throw IntegrationError(os.str());
    }
  };

  sample(t);
  check_invariants(t);

  const int check_every = std::max(1, config.invariant_check_every);

  if (!config.adaptive) {
    long n_steps;
    double dt;
    if (config.steps > 0) {
      n_steps = config.steps;
      dt = span / static_cast<double>(n_steps);
    } else {
      n_steps = static_cast<long>(std::ceil(span / config.dt - 1e-12));
      dt = config.dt;
    }
    for (long k = 0; k < n_steps; ++k) {
      const double t_next =
          (k + 1 == n_steps) ? config.t_end : config.t_start + (k + 1) * dt;
      const double h = t_next - t;
      try {
        cur = rk4_blocks(gen, space, cur, h);
      } catch (const IntegrationError& e) {
        throw IntegrationError(std::string(e.what()) + " at step " +
                               std::to_string(k + 1) + ", t = " + std::to_string(t));
      }
      t = t_next;
      ++result.accepted_steps;
      sample(t);
      if (result.accepted_steps % check_every == 0 || k + 1 == n_steps)
        check_invariants(t);
    }
  } else {
    double h = span / 64.0;
    const double h_min = 1e-14 * span;
    while (t < config.t_end) {
      h = std::min(h, config.t_end - t);
      if (h < h_min)
        throw IntegrationError("evolve: adaptive step underflow at t = " +
                               std::to_string(t));
      const Blocks coarse = rk4_blocks(gen, space, cur, h);
      Blocks fine = rk4_blocks(gen, space, cur, 0.5 * h);
      fine = rk4_blocks(gen, space, fine, 0.5 * h);
      const double err = max_block_diff(coarse, fine);
      const double tol_k = config.rtol * max_block_norm(cur) + config.atol;
      if (err <= tol_k) {
        cur = std::move(fine);
        t += h;
        ++result.accepted_steps;
        sample(t);
        if (result.accepted_steps % check_every == 0) check_invariants(t);
      }
      const double shrink =
          err > 0.0 ? 0.9 * std::pow(tol_k / err, 0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, shrink));
    }
    check_invariants(t);
  }

  result.final_state = BlockDiagonalState(space, std::move(cur));
  return result;
}

}  // namespace lrsim
