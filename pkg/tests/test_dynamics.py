import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from accelphase import dynamics as D
from accelphase.dissipator import KossakowskiPair
from accelphase.model import InitialState


def test_equatorial_pure_state_at_zero():
    rho = D.rho_closed(0.0, (0.01, 0.005), InitialState(math.pi / 2))
    assert rho.shape == (2, 2)
    np.testing.assert_allclose(rho, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)


@pytest.mark.parametrize("theta", [0.0, 1.0, math.pi])
def test_fixed_point(theta):
    a, b = 0.05, 0.02
    rho = D.rho_closed(1e3, (a, b), InitialState(theta))
    assert rho[0, 0].real == pytest.approx((a - b) / (2 * a), abs=1e-12)
    assert D.rho_closed(1e3, (a, a), InitialState(theta))[0, 0].real == pytest.approx(0.0, abs=1e-12)


def test_closed_matches_ode_example():
    g0 = 0.01
    pair = KossakowskiPair(g0 / 4, g0 / 4)
    state = InitialState(math.pi / 4)
    traj = D.lindblad_ode(pair, state, 1.0, 2 * math.pi, tol=1e-12)
    closed = D.rho_closed(traj.times[-1], pair, state)
    assert np.max(np.abs(traj.rho[-1] - closed)) < 1e-8


@settings(max_examples=15, deadline=None)
@given(st.floats(1e-3, 0.2), st.floats(-1.0, 1.0), st.floats(0.0, math.pi), st.floats(0.5, 2.0))
def test_closed_solves_master_equation(a, frac, theta, omega):
    pair = (a, frac * a)
    state = InitialState(theta)
    h = 1e-4
    for t in (0.3, 2.0, 6.0):
        deriv = (D.rho_closed(t + h, pair, state, omega) - D.rho_closed(t - h, pair, state, omega)) / (2 * h)
        rhs = D.master_equation_rhs(D.rho_closed(t, pair, state, omega), pair, omega)
        assert np.max(np.abs(deriv - rhs)) < 1e-6


def test_unitary_limit_conserves_purity():
    traj = D.lindblad_ode((0.0, 0.0), InitialState(1.1), 1.0, 4 * math.pi, tol=1e-10)
    assert np.max(np.abs(D.purity(traj.rho) - 1.0)) < 1e-9


def test_trace_and_hermiticity():
    rho = D.rho_closed(np.linspace(0, 20, 30), (0.03, -0.01), InitialState(2.0), 1.3)
    np.testing.assert_allclose(np.trace(rho, axis1=1, axis2=2), 1.0, atol=1e-15)
    np.testing.assert_allclose(rho, np.conj(np.swapaxes(rho, 1, 2)), atol=0)


def test_purity_not_monotone_when_b_nonzero():
    # zero-temperature bath: the steady state is pure, so purity dips and then recovers
    t = np.linspace(0.0, 200.0, 2001)
    p = D.purity(D.rho_closed(t, (0.02, 0.02), InitialState(math.pi / 2)))
    assert p[0] == pytest.approx(1.0) and p[-1] == pytest.approx(1.0, abs=1e-6)
    assert p.min() < 0.9


def test_purity_decreases_for_unital_bath():
    t = np.linspace(0.0, 50.0, 501)
    p = D.purity(D.rho_closed(t, (0.02, 0.0), InitialState(0.7)))
    assert np.all(np.diff(p) <= 1e-15)


def test_eigen_track_initial_values():
    theta = 0.9
    tr = D.eigen_track(0.01, 0.004, theta, 0.0)
    assert float(tr.lambda_minus) == pytest.approx(0.0, abs=1e-15)
    assert float(tr.lambda_plus) == pytest.approx(1.0)
    # dominant eigenvector starts on the initial state: sin^2(theta_0/2) = cos^2(theta/2)
    assert math.sin(float(tr.theta_tau) / 2) ** 2 == pytest.approx(math.cos(theta / 2) ** 2, rel=1e-14)


def test_eigen_track_polar_limits():
    up = D.eigen_track(0.01, 0.004, 0.0, np.array([0.0, 1.0]))
    down = D.eigen_track(0.01, 0.004, math.pi, np.array([0.0, 1.0]))
    np.testing.assert_allclose(up.theta_tau, math.pi)
    np.testing.assert_allclose(down.theta_tau, 0.0, atol=1e-7)


def test_eigenvalues_match_numerics():
    a, b, theta, tau = 0.03, 0.01, 1.2, 7.0
    tr = D.eigen_track(a, b, theta, tau)
    ev = np.linalg.eigvalsh(D.rho_closed(tau, (a, b), InitialState(theta), 1.0))
    np.testing.assert_allclose(sorted([float(tr.lambda_minus), float(tr.lambda_plus)]), ev, atol=1e-14)


def test_ode_rejects_tolerance_out_of_range():
    with pytest.raises(ValueError):
        D.lindblad_ode((0.01, 0.0), InitialState(1.0), tol=1e-3)


def test_eigen_track_diagonal_case():
    a = 0.02
    tau = np.linspace(0.0, 60.0, 61)
    tr = D.eigen_track(a, a, 0.0, tau)
    decay = np.exp(-4 * a * tau)
    np.testing.assert_allclose(tr.rho3, 2 * decay - 1, atol=1e-15)
    np.testing.assert_allclose(tr.lambda_plus, np.maximum(decay, 1 - decay), atol=1e-15)


def test_eigen_track_equator_vs_eigensolver():
    a = 0.01
    for tau in (0.5, 10.0, 80.0):
        tr = D.eigen_track(a, a, math.pi / 2, tau)
        ev = np.linalg.eigvalsh(D.rho_closed(tau, (a, a), InitialState(math.pi / 2)))
        assert float(tr.lambda_plus) == pytest.approx(ev[1], abs=1e-12)


def test_eigen_track_continuous():
    tr = D.eigen_track(0.05, 0.03, 0.4, np.linspace(0.0, 100.0, 2001))
    assert np.max(np.abs(np.diff(tr.theta_tau))) < math.pi / 2


def test_ode_within_ten_tol_for_accelerated_atom():
    from accelphase.dissipator import kossakowski
    from accelphase.model import AtomConfig, Scenario

    pair = kossakowski(AtomConfig(1.0, 0.05), Scenario.linear(2.0))
    state = InitialState(math.pi / 4)
    tol = 1e-10
    traj = D.lindblad_ode(pair, state, 1.0, 4 * math.pi, tol=tol)
    assert np.max(np.abs(traj.rho - D.rho_closed(traj.times, pair, state))) < 10 * tol


def test_ode_reaches_fixed_point():
    a, b = 0.05, 0.03
    traj = D.lindblad_ode((a, b), InitialState(2.0), 1.0, 50 / a, tol=1e-10)
    assert traj.rho[-1, 0, 0].real == pytest.approx((a - b) / (2 * a), abs=1e-6)
    np.testing.assert_allclose(np.trace(traj.rho, axis1=1, axis2=2), 1.0, atol=1e-12)
