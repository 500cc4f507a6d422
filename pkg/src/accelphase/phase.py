"""Geometric phase of the atom over one quasi-period ``T = 2 pi / Omega``.

Three routes: adaptive quadrature of the phase integral
(:func:`phase_quadrature`), its closed-form antiderivative
(:func:`phase_closed`) and the leading-order corrections in ``gamma0``
(:func:`delta_perturbative`, :func:`inertial_baseline`).

Rescaled corrections ``delta_tilde`` are in units of ``pi^2 gamma0/(2 omega0)``.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from . import correlators
from ._roots import bracketed_root
from .dissipator import CrossingResult, KossakowskiPair, kossakowski
from .model import AtomConfig, InitialState, Scenario, ScenarioKind, delta_scale

log = logging.getLogger(__name__)


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    CLOSED = "closed"
    PERTURBATIVE = "perturbative"


@dataclass(frozen=True)
class PhaseResult:
    gamma_total: float
    gamma_inertial: float
    delta: float
    delta_tilde: float
    method: Method


def _values(pair):
    if isinstance(pair, KossakowskiPair):
        return pair.a_coeff, pair.b_coeff
    a, b = pair
    return float(a), float(b)


def _polar_phase(a, r, cos_t, omega_eff, period):
    """Phase for ``sin(theta) = 0``: ``-Omega`` times the time spent with ``rho3 < 0``."""
    if cos_t < 0:
        return -omega_eff * period
    if a == 0.0 or r <= 0.0:
        return 0.0
    t_cross = math.log1p(cos_t / r) / (4.0 * a)
    return -omega_eff * max(0.0, period - t_cross)


def phase_integrand(tau, a_coeff, b_coeff, theta, omega_eff=1.0):
    """``-Omega cos^2(theta_tau / 2)`` as a function of proper time."""
    r = b_coeff / a_coeff
    grow = np.exp(4.0 * a_coeff * np.asarray(tau, dtype=float))
    x = r - r * grow + math.cos(theta)
    return -0.5 * omega_eff * (1.0 - x / np.sqrt(grow * math.sin(theta) ** 2 + x * x))


def phase_quadrature(pair, state: InitialState, omega_eff: float = 1.0, epsabs: float = 1e-12) -> float:
    """Geometric phase by adaptive quadrature over ``[0, 2 pi / Omega]``."""
    a, b = _values(pair)
    theta = state.theta
    period = 2.0 * math.pi / omega_eff
    if a == 0.0:
        return -math.pi * (1.0 - math.cos(theta))
    if math.sin(theta) ** 2 == 0.0:  # also catches underflow of sin^2
        return _polar_phase(a, b / a, math.cos(theta), omega_eff, period)
    # near the poles the integrand steps where rho3 changes sign
    points = None
    arg = math.cos(theta) * a / b if b != 0.0 else 0.0
    if arg > 0.0:
        t_cross = math.log1p(arg) / (4.0 * a)
        if 0.0 < t_cross < period:
            points = [t_cross]
    value, _ = integrate.quad(
        phase_integrand, 0.0, period, args=(a, b, theta, omega_eff),
        epsabs=epsabs, epsrel=1e-13, limit=200, points=points,
    )
    return value


def antiderivative(phi, a_coeff, b_coeff, theta, omega0=1.0):
    """``F(phi)`` with ``phi = omega0 tau``, evaluated literally."""
    r = b_coeff / a_coeff
    q = r + math.cos(theta)
    c = 1.0 - q * q - r * r
    x = 4.0 * a_coeff * np.asarray(phi, dtype=float) / omega0
    s = np.sqrt(r * r * np.exp(2.0 * x) + c * np.exp(x) + q * q)
    first = np.log((c + 2.0 * r * r * np.exp(x)) / (2.0 * r) + s)
    second = np.sign(q) * np.log(c + 2.0 * q * q * np.exp(-x) + 2.0 * abs(q) * s * np.exp(-x))
    return -0.5 * phi - omega0 / (8.0 * a_coeff) * (first + second)


def _log_ratio(g0, t0, dg, dt, k):
    """``log((g1 + t1) / (g0 + t0))`` where ``(g + t)(t - g) = k`` at both ends.

    Where ``g < 0`` the sum ``g + t`` cancels, so ``k / (t - g)`` is used
    instead. Same-branch increments go through ``log1p``.
    """
    g1, t1 = g0 + dg, t0 + dt
    if g0 >= 0.0 and g1 >= 0.0:
        return math.log1p((dg + dt) / (g0 + t0))
    if g0 < 0.0 and g1 < 0.0:
        return -math.log1p((dt - dg) / (t0 - g0))

    def end(g, t):
        return math.log(g + t) if g >= 0.0 else math.log(k) - math.log(t - g)

    return end(g1, t1) - end(g0, t0)


def _antiderivative_increment(phi, a, r, q, omega0, sin2):
    """``F(phi) - F(0)`` evaluated without cancellation.

    Both logarithms have the form ``log(g + t)`` with ``t >= 0`` and
    ``t^2 - g^2`` constant in ``phi``:
    ``(P/2r)`` and ``S`` with ``S^2 - (P/2r)^2 = k/4r^2``, and
    ``c + 2 q^2 e^-x`` and ``2|q| S e^-x`` with difference of squares ``k``,
    where ``k = 4 q^2 r^2 - c^2 = sin^2(theta) (q + r - 1)(q + r + 1)``.
    """
    c = 1.0 - q * q - r * r
    x = 4.0 * a * phi / omega0
    m1, m2, mneg = math.expm1(x), math.expm1(2.0 * x), math.expm1(-x)
    s = math.sqrt(r * r * math.exp(2.0 * x) + c * math.exp(x) + q * q)  # S(0) = 1
    s_d = (r * r * m2 + c * m1) / (s + 1.0)  # S - 1
    se = s * math.exp(-x)
    se_d = (c * mneg + q * q * mneg * (2.0 + mneg)) / (se + 1.0)  # S e^-x - 1
    k = sin2 * (q + r - 1.0) * (q + r + 1.0)

    logs = _log_ratio((c + 2.0 * r * r) / (2.0 * r), 1.0, r * m1, s_d, k / (4.0 * r * r))
    if q != 0.0:
        aq = abs(q)
        logs += math.copysign(1.0, q) * _log_ratio(c + 2.0 * q * q, 2.0 * aq, 2.0 * q * q * mneg, 2.0 * aq * se_d, k)
    return -0.5 * phi - omega0 / (8.0 * a) * logs


def phase_closed(pair, state: InitialState, omega_eff: float = 1.0, omega0: float = 1.0) -> float:
    """Geometric phase from the antiderivative, ``(Omega/omega0)[F(omega0 T) - F(0)]``.

    With ``T = 2 pi / Omega`` the upper argument is ``2 pi omega0 / Omega``,
    i.e. ``2 pi`` when the Lamb shift is neglected. ``Q = 0`` drops the
    ``sgn(Q)`` logarithm; ``sin(theta) = 0`` and ``R = 0`` are evaluated exactly
    or by quadrature because ``F`` is singular there.
    """
    a, b = _values(pair)
    theta = state.theta
    period = 2.0 * math.pi / omega_eff
    if a == 0.0:
        return -math.pi * (1.0 - math.cos(theta))
    r = b / a
    if math.sin(theta) ** 2 == 0.0:  # also catches underflow of sin^2
        return _polar_phase(a, r, math.cos(theta), omega_eff, period)
    if r * r == 0.0:
        log.warning("R = 0: antiderivative undefined, using quadrature")
        return phase_quadrature(pair, state, omega_eff)
    q = r + math.cos(theta)
    return omega_eff / omega0 * _antiderivative_increment(omega0 * period, a, r, q, omega0, math.sin(theta) ** 2)


# -- perturbative corrections ---------------------------------------------------


def linear_thermal_weight(accel: float) -> float:
    """``2 / (exp(2 pi / a) - 1)``, the linear-acceleration share of ``coth(pi/a) - 1``."""
    return 2.0 * float(correlators.bose(2.0 * math.pi / accel))


def _inertial_mirror_factor(boundary):
    if boundary is None:
        return 1.0
    return float(correlators.one_minus_sinc(2.0 * boundary))


def delta_perturbative(scenario: Scenario, state: InitialState) -> float:
    """Leading-order acceleration-induced phase correction ``delta_tilde``."""
    a = scenario.accel
    z = scenario.boundary
    th = state.theta
    sin2, cos_t = math.sin(th) ** 2, math.cos(th)
    kind = scenario.kind

    if kind is ScenarioKind.INERTIAL:
        return 0.0
    if kind is ScenarioKind.LINEAR:
        if z is None:
            return -linear_thermal_weight(a) * sin2 * cos_t
        coth = 1.0 / math.tanh(math.pi / a)
        mirror_a = float(correlators.linear_boundary_suppression(a, z))
        mirror_0 = _inertial_mirror_factor(z)
        return -sin2 * ((2.0 + cos_t * coth) * mirror_a - (2.0 + cos_t) * mirror_0)
    thermal = correlators.circular_thermal_term(a)
    if z is None:
        return -thermal * sin2 * cos_t
    oscillating, evanescent = correlators.circular_boundary_terms(a, z)
    brace = (
        thermal * cos_t
        - (cos_t * evanescent + (2.0 + cos_t) * oscillating)
        + (2.0 + cos_t) * float(correlators.sinc(2.0 * z))
    )
    return -sin2 * brace


def inertial_baseline(atom: AtomConfig, state: InitialState, boundary: Optional[float] = None) -> float:
    """First-order phase of the inertial atom (optionally near the mirror), radians."""
    th = state.theta
    correction = math.sin(th) ** 2 * (2.0 + math.cos(th)) * _inertial_mirror_factor(boundary)
    return -math.pi * (1.0 - math.cos(th)) - delta_scale(atom) * correction


def compute_phase(atom: AtomConfig, scenario: Scenario, state: InitialState, method=Method.CLOSED) -> PhaseResult:
    """Total phase, matched inertial baseline and their difference.

    The exact methods take the baseline from the inertial atom at the same
    mirror distance, evaluated with the same method, so ``delta`` carries no
    truncation error; the perturbative method uses the first-order forms.
    """
    method = Method(method)
    scale = delta_scale(atom)
    if method is Method.PERTURBATIVE:
        baseline = inertial_baseline(atom, state, scenario.boundary)
        d_tilde = delta_perturbative(scenario, state)
        return PhaseResult(baseline + d_tilde * scale, baseline, d_tilde * scale, d_tilde, method)

    route = phase_closed if method is Method.CLOSED else phase_quadrature
    omega = atom.omega_eff_tilde
    pair = _dimensionless_pair(atom, scenario)
    total = route(pair, state, omega)
    if scenario.kind is ScenarioKind.INERTIAL:
        baseline = total
    else:
        baseline = route(_dimensionless_pair(atom, scenario.inertial_counterpart()), state, omega)
    delta = total - baseline
    return PhaseResult(total, baseline, delta, delta / scale, method)


def _dimensionless_pair(atom: AtomConfig, scenario: Scenario) -> KossakowskiPair:
    pair = kossakowski(atom, scenario)
    return KossakowskiPair(pair.a_coeff / atom.omega0, pair.b_coeff / atom.omega0)


# -- crossing acceleration ------------------------------------------------------


def crossing_condition(accel: float) -> float:
    """Linear minus circular weight of ``sin^2(theta) cos(theta)`` in free space."""
    return linear_thermal_weight(accel) - correlators.circular_thermal_term(accel)


def phase_crossing(bracket=(1.0, 10.0)) -> CrossingResult:
    """Acceleration where linear and circular free-space corrections agree for every theta.

    Both corrections are proportional to ``sin^2(theta) cos(theta)``, so the root
    is independent of the initial state. The same root also equalises the
    relative transition rates.
    """
    root = bracketed_root(crossing_condition, *bracket, xtol=1e-14)
    return CrossingResult(root, abs(crossing_condition(root)), correlators.circular_thermal_term(root))
