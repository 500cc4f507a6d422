import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from accelphase import correlators as C
from accelphase.model import Scenario

mp.mp.dps = 40


# -- literal forms evaluated in extended precision -----------------------------

def linear_oracle(a, lam, z=None):
    a, lam = mp.mpf(a), mp.mpf(lam)
    free = lam / (2 * mp.pi * (1 - mp.exp(-2 * mp.pi * lam / a)))
    if z is None:
        return free
    z = mp.mpf(z)
    return free * (1 - mp.sin(2 * lam / a * mp.asinh(a * z)) / (2 * z * lam * mp.sqrt(1 + a * a * z * z)))


def circular_bracket_oracle(a, z):
    """The printed U/V pieces: (sqrt6 a / 2V) e^{-sqrt(2U+6)/a}/sqrt(U+3) and the sine one."""
    a, z = mp.mpf(a), mp.mpf(z)
    u = mp.sqrt(9 + 12 * a * a * z * z)
    v = mp.sqrt(3 + 4 * a * a * z * z)
    pref = mp.sqrt(6) * a / (2 * v)
    ev = pref * mp.exp(-mp.sqrt(2 * u + 6) / a) / mp.sqrt(u + 3)
    osc = pref * mp.sin(mp.sqrt(2 * u - 6) / a) / mp.sqrt(u - 3)
    return float(osc), float(ev)


# -- helpers -----------------------------------------------------------------

@pytest.mark.parametrize("x", [0.0, 1e-8, 1e-3, 9.9e-3, 1e-2, 0.5, 3.0, 40.0])
def test_one_minus_sinc(x):
    expected = float(1 - mp.sinc(x)) if x else 0.0
    assert float(C.one_minus_sinc(x)) == pytest.approx(expected, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("w", [1e-6, 1e-3, 9.9e-3, 1e-2, 0.3, 5.0])
def test_asinh_ratio_deficit(w):
    w_ = mp.mpf(w)
    expected = float(1 - mp.asinh(w_) / (w_ * mp.sqrt(1 + w_ * w_)))
    assert float(C.asinh_ratio_deficit(w)) == pytest.approx(expected, rel=1e-10)


def test_bose_large_argument_no_overflow():
    assert float(C.bose(800.0)) == 0.0
    assert float(C.bose(1.0)) == pytest.approx(1 / (math.e - 1), rel=1e-15)


# -- Wightman functions ---------------------------------------------------------

@pytest.mark.parametrize("sc", [
    Scenario.linear(1.0), Scenario.linear(1.0, 0.8), Scenario.circular(2.0),
    Scenario.circular(2.0, 0.8), Scenario.inertial(), Scenario.inertial(1.3),
])
def test_wightman_hermitian(sc):
    g_pos = C.wightman(sc, 0.7, 1e-3)
    g_neg = C.wightman(sc, -0.7, 1e-3)
    assert g_neg == pytest.approx(np.conj(g_pos), rel=1e-14)


def test_inertial_wightman_epsilon_limit():
    eps = np.array([1e-3, 1e-4, 1e-5])
    vals = np.array([C.wightman(Scenario.inertial(), 1.0, e).real for e in eps])
    # quadratic in eps: fit and extrapolate
    coef = np.polyfit(eps, vals, 2)
    assert coef[-1] == pytest.approx(-1.0 / (4 * math.pi**2), rel=1e-10)
    assert -1.0 / (4 * math.pi**2) == pytest.approx(-0.025330295910584444)


@pytest.mark.parametrize("a", [1e-3, 1e-4])
def test_linear_wightman_zero_accel_limit(a):
    g_lin = C.wightman(Scenario.linear(a), 1.0, 1e-3)
    g_in = C.wightman(Scenario.inertial(), 1.0, 1e-3)
    assert abs(g_lin - g_in) < 1e-6


def test_linear_wightman_large_separation_finite():
    g = C.wightman(Scenario.linear(2.0, 1.0), np.array([300.0, 800.0]), 0.1)
    assert np.all(np.isfinite(g))


def test_wightman_needs_positive_regulator():
    with pytest.raises(ValueError):
        C.wightman(Scenario.inertial(), 0.0, 0.0)


# -- closed-form responses ------------------------------------------------------

def test_linear_small_accel_is_vacuum():
    assert C.response_closed(Scenario.linear(1e-3), 1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert C.response_closed(Scenario.linear(1e-3), -1.0) < 1e-300


def test_linear_ratio_at_two_pi():
    pair = C.response_pair(Scenario.linear(2 * math.pi))
    assert pair.ratio == pytest.approx(math.exp(-1), rel=1e-14)
    assert pair.ratio == pytest.approx(0.36787944117144233)


def test_circular_excitation_at_two_root_three():
    g = C.response_closed(Scenario.circular(2 * math.sqrt(3)), -1.0)
    assert g == pytest.approx(0.5 * math.exp(-1) / (2 * math.pi), rel=1e-14)
    assert g == pytest.approx(0.029275, abs=1e-6)


@pytest.mark.parametrize("a", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("lam", [1.0, -1.0, 0.3, -2.5])
@pytest.mark.parametrize("z", [None, 1e-3, 0.5, 7.0])
def test_linear_closed_matches_literal(a, lam, z):
    expected = float(linear_oracle(a, lam, z))
    assert C.response_closed(Scenario.linear(a, z), lam) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("a,z", [(0.5, 0.5), (2.0, 0.5), (2.0, 10.0), (10.0, 3.0), (1e-2, 1e-2)])
def test_circular_boundary_terms_match_printed(a, z):
    osc, ev = C.circular_boundary_terms(a, z)
    ref_osc, ref_ev = circular_bracket_oracle(a, z)
    assert osc == pytest.approx(ref_osc, rel=1e-10)
    assert ev == pytest.approx(ref_ev, rel=1e-10, abs=1e-300)


def test_circular_boundary_small_az_finite():
    osc, ev = C.circular_boundary_terms(1e-4, 1e-4)
    assert math.isfinite(osc) and osc == pytest.approx(1.0, rel=1e-7)


def test_linear_boundary_far_limit():
    free = C.response_closed(Scenario.linear(1.0), 1.0)
    far = C.response_closed(Scenario.linear(1.0, 1e8), 1.0)
    assert abs(far - free) < 1e-8


def test_boundary_envelope_decays():
    free = C.response_closed(Scenario.linear(1.0), 1.0)
    gaps = [max(abs(C.response_closed(Scenario.linear(1.0, z), 1.0) - free) for z in np.linspace(z0, 2 * z0, 50))
            for z0 in (10.0, 100.0, 1000.0)]
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize("lam", [1.0, -1.0])
def test_linear_small_z_vanishes(lam):
    assert C.response_closed(Scenario.linear(2.0, 1e-5), lam) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 30.0), st.floats(0.1, 3.0))
def test_kms_detailed_balance(a, lam):
    sc = Scenario.linear(a)
    lhs = C.response_closed(sc, -lam)
    rhs = math.exp(-2 * math.pi * lam / a) * C.response_closed(sc, lam)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


def test_circular_only_at_plus_minus_omega0():
    with pytest.raises(C.UnsupportedFrequencyError):
        C.response_closed(Scenario.circular(1.0), 0.5)
    with pytest.raises(C.UnsupportedFrequencyError):
        C.response_closed(Scenario.linear(1.0), 0.0)


# -- quadrature oracle ----------------------------------------------------------

@pytest.mark.parametrize("sc", [Scenario.linear(1.0), Scenario.circular(2.0), Scenario.linear(2.0, 2.0), Scenario.circular(2.0, 0.5)])
@pytest.mark.parametrize("lam", [1.0, -1.0])
def test_quadrature_matches_closed(sc, lam):
    est = C.response_quadrature(sc, lam)
    assert est.value == pytest.approx(C.response_closed(sc, lam), rel=1e-4)
    assert est.error >= 0


def test_quadrature_inertial():
    assert C.response_quadrature(Scenario.inertial(), 1.0).value == pytest.approx(1 / (2 * math.pi), rel=1e-4)
    assert abs(C.response_quadrature(Scenario.inertial(), -1.0).value) < 1e-6


def test_quadrature_rejects_bad_schedule():
    with pytest.raises(ValueError):
        C.response_quadrature(Scenario.linear(1.0), 1.0, epsilons=[0.1, 0.2, 0.05])


@pytest.mark.parametrize("make", [Scenario.linear, Scenario.circular])
def test_response_positivity(make):
    for a in (0.1, 1.0, 10.0):
        assert C.response_closed(make(a), 1.0) > 0 and C.response_closed(make(a), -1.0) >= 0
        for z in (0.3, 2.0, 25.0):
            assert C.response_closed(make(a, z), 1.0) > 0
