import json
import math

import numpy as np
import pytest

import lrsim


def test_version():
    assert lrsim.__version__


def test_oracles():
    assert lrsim.lambda_power_law(0.0, 1.0) == 1.0
    assert lrsim.lambda_power_law(1.0, 1.0) == pytest.approx(2.0 ** -1.5, rel=1e-15)
    assert lrsim.lambda_stretched(1.0, 1.0) == pytest.approx(2.0 / math.e, rel=1e-15)
    assert lrsim.gradshteyn_identity_residual(1.0, 1.0) < 1e-10
    assert lrsim.psi_multiexponential(2.0, [1.0], [0.5]) == pytest.approx(
        math.exp(-1.0), rel=1e-15
    )


def test_gas_physics():
    gas = lrsim.GasParameters(m=1.0, M=2.0, n_gas=1.0, beta=0.5)
    assert gas.p_beta == pytest.approx(2.0)
    assert gas.m_star == pytest.approx(2.0 / 3.0)

    q = np.array([0.3, -0.2, 0.9])
    e = 0.4
    lhs = lrsim.dynamic_structure_factor(q, e, gas)
    rhs = math.exp(-gas.beta * e) * lrsim.dynamic_structure_factor(q, -e, gas)
    assert lhs == pytest.approx(rhs, rel=1e-13)

    pp = np.array([0.9, 0.0, -0.3])
    pp = pp - pp.dot(q) / q.dot(q) * q
    res = lrsim.sdf_identity_relative_residual(pp, q, np.array([0.4, 0.1, 0.2]), 0.3, gas)
    assert res < 1e-12


def test_rate_coefficient_elastic_reduction():
    gas = lrsim.GasParameters(m=1.0, M=2.0, n_gas=0.7, beta=1.0)
    levels = lrsim.InternalLevels(np.array([0.0, 0.3]))
    amp = lrsim.ScatteringAmplitude.elastic_constant(2, 0.8 - 0.3j)
    p = np.array([0.2, 0.0, 0.5])
    q = np.array([0.0, 0.4, 0.3])
    m00 = lrsim.rate_coefficient(p, q, 0, 0, 0, 0, amp, levels, gas, quad_order=8)
    expect = (
        abs(0.8 - 0.3j) ** 2
        * gas.n_gas
        / gas.m_star**2
        * lrsim.dynamic_structure_factor(q, lrsim.energy_transfer(q, p, gas), gas)
    )
    assert m00 == pytest.approx(expect, rel=1e-12)


def test_coherence_decay_curve_matches_power_law():
    gas = lrsim.GasParameters(m=1.0, M=1.0, n_gas=1.0, beta=2.0)  # p_beta = 1
    ts = [0.0, 0.5, 1.0, 2.0, 5.0]
    curve = lrsim.coherence_decay_curve(lrsim.FrictionSpec.quadratic(1.0), gas, ts)
    for t, v in zip(curve.times, curve.values):
        assert abs(v) == pytest.approx(lrsim.lambda_power_law(t, 1.0), abs=1e-7)


def test_end_to_end_evolution_matches_oracle():
    gas = lrsim.GasParameters(m=1.0, M=1.0, n_gas=1.0, beta=2.0)
    rule = lrsim.radial_thermal_rule(48, gas.p_beta)
    space = lrsim.radial_thermal_space(rule, gas)
    sigma = np.full((2, 2), 0.5, dtype=complex)
    state = lrsim.thermal_radial_state(space, gas, sigma)
    gen = lrsim.build_internal_coherence_generator(
        lrsim.FrictionSpec.quadratic(1.0), space
    )
    out = lrsim.evolve_marginal_coherence(gen, state, t_end=5.0, steps=500)
    coh = np.asarray(out["coherence"])
    ratio = np.abs(coh / coh[0])
    oracle = (1.0 + np.asarray(out["t"])) ** -1.5
    assert np.max(np.abs(ratio - oracle) / oracle) < 1e-5
    assert out["max_trace_drift"] < 1e-10


def test_kick_model_closed_form():
    density = lrsim.KickDensity.isotropic_gaussian(0.7)
    d = np.array([0.0, 0.0, 1.2])
    phi = lrsim.characteristic_function(density, d)
    assert phi == pytest.approx(math.exp(-0.5 * 0.49 * 1.44), rel=1e-14)

    kicks = lrsim.KickSpec.diagonal(
        [lrsim.KickChannel(1.0, density), lrsim.KickChannel(2.0, density)]
    )
    a = lrsim.build_kick_coherence_ode(d, kicks)
    traj = lrsim.evolve_linear(a, np.array([0.5, 0.5], dtype=complex), [0.0, 1.0])
    expect = lrsim.position_solution(1.0, 1.0, phi, 0.5)
    assert abs(traj[1][0] - expect) < 1e-10


def test_geometric_survival_slope():
    fam = lrsim.GeometricFamily.make(1.0, 1.0, 1.0)
    ts = list(np.logspace(2, 4, 40))
    vals = [lrsim.psi_multiexponential(t, fam.weights, fam.rates) for t in ts]
    slope = lrsim.loglog_slope(ts, vals)
    assert slope == pytest.approx(-1.0, abs=0.02)


def test_run_config_string(tmp_path):
    config = {
        "schema_version": 1,
        "scenario": {
            "kind": "internal_coherence",
            "gas": {"m": 1.0, "M": 1.0, "n_gas": 1.0, "beta": 2.0},
            "friction": {"form": "quadratic", "a": 1.0},
            "grid": {"points": 32},
        },
        "integration": {"t_end": 4.0, "steps": 300},
        "output": {"csv": "run.csv", "report": "run.json"},
        "verify": {
            "channel": "coherence",
            "oracle": "power_law",
            "params": {"tau": 1.0},
            "tol": 1e-3,
        },
    }
    out = lrsim.run_config_string(json.dumps(config), str(tmp_path))
    assert out["exit_code"] == 0
    report = json.loads(out["report"])
    assert report["verify"]["pass"] is True
    assert (tmp_path / "run.csv").exists()
    assert (tmp_path / "run.json").exists()
