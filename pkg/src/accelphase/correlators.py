"""Wightman functions along each trajectory and their Fourier transforms.

All quantities are dimensionless (omega0 = 1). Response functions exclude the
coupling ``mu**2``: ``G(lam) = int dtau exp(i lam dtau) G+(dtau)``.

Two independent routes are provided: the closed forms
(:func:`response_closed`) and direct numerical integration of the regulated
Wightman function followed by extrapolation of the regulator to zero
(:func:`response_quadrature`).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from .model import Scenario, ScenarioKind

SQRT3 = math.sqrt(3.0)
FOUR_PI2 = 4.0 * math.pi**2
POLE_TOLERANCE = 1e-12


class PoleProximityError(ArithmeticError):
    """The regulated Wightman denominator is too close to zero."""


class ConvergenceError(ArithmeticError):
    """Quadrature or regulator extrapolation did not reach the tolerance."""


class UnsupportedFrequencyError(ValueError):
    pass


@dataclass(frozen=True)
class ResponsePair:
    """Response function at the emission (+omega0) and absorption (-omega0) frequency."""

    g_plus: float
    g_minus: float

    @property
    def ratio(self) -> float:
        return self.g_minus / self.g_plus


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    error: float
    epsilons: tuple
    samples: tuple


# -- removable singularities -------------------------------------------------


def sinc(x):
    """Unnormalised ``sin(x)/x``."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def one_minus_sinc(x):
    """``1 - sin(x)/x``, by its Taylor series near ``x = 0``."""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    series = x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = 1.0 - np.sin(x) / x
    out = np.where(np.abs(x) < 1e-2, series, direct)
    return out[()] if out.ndim == 0 else out


def asinh_ratio_deficit(w):
    """``1 - asinh(w) / (w sqrt(1 + w**2))``; series below ``|w| = 1e-2``."""
    w = np.asarray(w, dtype=float)
    w2 = w * w
    series = w2 * (2.0 / 3.0 - w2 * (8.0 / 15.0 - w2 * (16.0 / 35.0 - w2 * 128.0 / 315.0)))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = 1.0 - np.arcsinh(w) / (w * np.sqrt(1.0 + w2))
    out = np.where(np.abs(w) < 1e-2, series, direct)
    return out[()] if out.ndim == 0 else out


def bose(x):
    """``1 / (exp(x) - 1)`` for ``x > 0`` without overflow."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-x) / -np.expm1(-x)
    return out[()] if out.ndim == 0 else out


def linear_boundary_factor(accel, z, lam=1.0):
    """``sin[(2 lam/a) asinh(a z)] / (2 z lam sqrt(1 + a^2 z^2))``.

    ``accel = 0`` gives the inertial limit ``sin(2 z lam)/(2 z lam)``.
    """
    y = 2.0 * abs(lam) * z * (1.0 - _asinh_ratio_y(accel * z))
    w = accel * z
    return sinc(y) * (1.0 - asinh_ratio_deficit(w))


def _asinh_ratio_y(w):
    # 1 - asinh(w)/w, so that y = 2 lam z * asinh(az)/(az)
    w = np.asarray(w, dtype=float)
    w2 = w * w
    series = w2 * (1.0 / 6.0 - w2 * (3.0 / 40.0 - w2 * 5.0 / 112.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = 1.0 - np.arcsinh(w) / w
    out = np.where(np.abs(w) < 1e-2, series, direct)
    return out[()] if out.ndim == 0 else out


def linear_boundary_suppression(accel, z, lam=1.0):
    """``1 - linear_boundary_factor``, free of cancellation as ``z -> 0``."""
    y = 2.0 * abs(lam) * z * (1.0 - _asinh_ratio_y(accel * z))
    return one_minus_sinc(y) + sinc(y) * asinh_ratio_deficit(accel * z)


def circular_boundary_terms(accel: float, z: float):
    """Mirror corrections for the ultrarelativistic circular orbit.

    Returns ``(oscillating, evanescent)`` with
    ``oscillating = (3/U) sin(p)/p`` and ``evanescent = 3 exp(-q) / (U q)``,
    where ``U = sqrt(9 + 12 a^2 z^2)``, ``p = sqrt(2U - 6)/a`` and
    ``q = sqrt(2U + 6)/a``. ``p`` is evaluated as ``z sqrt(24/(U + 3))`` so the
    ``U -> 3`` limit (small ``a z``) needs no special casing.
    """
    u = math.sqrt(9.0 + 12.0 * (accel * z) ** 2)
    p = z * math.sqrt(24.0 / (u + 3.0))
    q = math.sqrt(2.0 * u + 6.0) / accel
    oscillating = 3.0 / u * float(sinc(p))
    evanescent = 3.0 * math.exp(-q) / (u * q)
    return oscillating, evanescent


def circular_thermal_term(accel: float) -> float:
    """``(a / (2 sqrt 3)) exp(-2 sqrt 3 / a)``."""
    return accel / (2.0 * SQRT3) * math.exp(-2.0 * SQRT3 / accel)


# -- Wightman functions -------------------------------------------------------


def _check_pole(den, where):
    if np.any(np.abs(den) < POLE_TOLERANCE):
        raise PoleProximityError(f"|denominator| < {POLE_TOLERANCE:g} in {where}; adjust epsilon")


def _csch2(x):
    x = np.where(x.real < 0, -x, x)
    e = np.exp(-2.0 * x)
    one_minus = 1.0 - e
    # |sinh x|^2 = |1 - e|^2 / (4 |e|)
    if np.any(np.abs(one_minus) ** 2 < 4.0 * POLE_TOLERANCE * np.abs(e)):
        raise PoleProximityError("sinh^2 denominator vanishes; adjust epsilon")
    return 4.0 * e / one_minus**2


def _inv_sinh2_minus(x, c2):
    """``1 / (sinh(x)^2 - c2)`` via exponentials."""
    x = np.where(x.real < 0, -x, x)
    e = np.exp(-2.0 * x)
    den = 1.0 - (2.0 + 4.0 * c2) * e + e * e
    if np.any(np.abs(den) < 4.0 * POLE_TOLERANCE * np.abs(e)):
        raise PoleProximityError("image-term denominator vanishes; adjust epsilon")
    return 4.0 * e / den


def wightman(scenario: Scenario, dtau, epsilon: float):
    """Regulated Wightman function ``G+(dtau - i epsilon)`` along the trajectory.

    The regulator shifts proper time uniformly, ``dtau -> dtau - i epsilon``;
    for the hyperbolic trajectory this is the same prescription as
    ``sinh(a dtau/2 - i eps')`` with ``eps' = a epsilon / 2``. With a mirror
    the Dirichlet image term is added to the free part.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon!r}")
    u = np.asarray(dtau, dtype=float) - 1j * epsilon
    a = scenario.accel
    z = scenario.boundary
    kind = scenario.kind

    if kind is ScenarioKind.LINEAR:
        x = 0.5 * a * u
        value = _csch2(x)
        if z is not None:
            value = value - _inv_sinh2_minus(x, (a * z) ** 2)
        value = -(a * a) / (4.0 * FOUR_PI2) * value
    elif kind is ScenarioKind.CIRCULAR:
        u2 = u * u
        den = u2 * (1.0 + a * a * u2 / 12.0)
        _check_pole(den, "circular correlator")
        inv = 1.0 / den
        if z is not None:
            den_b = 4.0 * z * z - u2 - a * a * u2 * u2 / 12.0
            _check_pole(den_b, "circular image term")
            inv = inv + 1.0 / den_b
        value = -inv / FOUR_PI2
    else:
        u2 = u * u
        _check_pole(u2, "inertial correlator")
        inv = 1.0 / u2
        if z is not None:
            den_b = 4.0 * z * z - u2
            _check_pole(den_b, "inertial image term")
            inv = inv + 1.0 / den_b
        value = -inv / FOUR_PI2
    return value[()] if value.ndim == 0 else value


# -- closed-form responses ----------------------------------------------------


def _free_thermal(lam: float, accel: float) -> float:
    """``lam / (2 pi (1 - exp(-2 pi lam / a)))``; ``accel = 0`` is the vacuum."""
    if accel == 0.0:
        return lam / (2.0 * math.pi) if lam > 0 else 0.0
    x = 2.0 * math.pi * abs(lam) / accel
    if lam > 0:
        return lam / (2.0 * math.pi) / -math.expm1(-x)
    return abs(lam) / (2.0 * math.pi) * float(bose(x))


def response_closed(scenario: Scenario, lam: float) -> float:
    """Closed-form response function at signed frequency ``lam`` (units of omega0)."""
    lam = float(lam)
    if lam == 0.0 or not math.isfinite(lam):
        raise UnsupportedFrequencyError("response function requires a finite lam != 0")
    a = scenario.accel
    z = scenario.boundary

    if scenario.kind is ScenarioKind.CIRCULAR:
        if abs(abs(lam) - 1.0) > 1e-12:
            raise UnsupportedFrequencyError(
                "circular closed forms exist only at lam = +omega0 and -omega0"
            )
        thermal = a / (4.0 * SQRT3) * math.exp(-2.0 * SQRT3 / a)
        value = thermal + (1.0 if lam > 0 else 0.0)
        if z is not None:
            oscillating, evanescent = circular_boundary_terms(a, z)
            value -= 0.5 * evanescent
            if lam > 0:
                value -= oscillating
        return value / (2.0 * math.pi)

    free = _free_thermal(lam, a)
    if z is None:
        return free
    return free * float(linear_boundary_suppression(a, z, lam))


def response_pair(scenario: Scenario) -> ResponsePair:
    return ResponsePair(response_closed(scenario, 1.0), response_closed(scenario, -1.0))


# -- quadrature oracle --------------------------------------------------------


def _offaxis_pole_distance(scenario: Scenario) -> float:
    """Distance from the real axis of the nearest complex singularity."""
    if scenario.kind is ScenarioKind.LINEAR:
        return 2.0 * math.pi / scenario.accel
    if scenario.kind is ScenarioKind.CIRCULAR:
        return math.sqrt(12.0) / scenario.accel
    return math.inf


def _real_axis_poles(scenario: Scenario):
    z = scenario.boundary
    if z is None:
        return []
    a = scenario.accel
    if scenario.kind is ScenarioKind.LINEAR:
        return [2.0 / a * math.asinh(a * z)]
    if scenario.kind is ScenarioKind.CIRCULAR:
        u = math.sqrt(9.0 + 12.0 * (a * z) ** 2)
        return [z * math.sqrt(24.0 / (u + 3.0))]
    return [2.0 * z]


def default_epsilons(scenario: Scenario, count: int = 6) -> np.ndarray:
    eps_max = min(0.5, 0.25 * _offaxis_pole_distance(scenario))
    return eps_max / 2.0 ** np.arange(count)


def _transform_at(scenario: Scenario, lam: float, epsilon: float, window: float, poles):
    """``int exp(i lam s) G+(s - i eps) ds`` over the whole real line.

    ``G+(-s - i eps) = conj G+(s - i eps)`` so the integral is twice the real
    part of the half-line integral. ``[0, window]`` is integrated adaptively,
    the tail by QAWF.
    """
    w = abs(lam)
    sign = 1.0 if lam > 0 else -1.0

    def re(s):
        return wightman(scenario, s, epsilon).real

    def im(s):
        return wightman(scenario, s, epsilon).imag

    kw = dict(limit=4000, epsabs=1e-15, epsrel=1e-12)
    pts = [p for p in poles if 0.0 < p < window] or None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        c_near, ec1 = integrate.quad(lambda s: math.cos(w * s) * re(s), 0.0, window, points=pts, **kw)
        s_near, es1 = integrate.quad(lambda s: math.sin(w * s) * im(s), 0.0, window, points=pts, **kw)
        c_tail, ec2 = integrate.quad(re, window, np.inf, weight="cos", wvar=w, limlst=200, epsabs=1e-14)
        s_tail, es2 = integrate.quad(im, window, np.inf, weight="sin", wvar=w, limlst=200, epsabs=1e-14)
    value = 2.0 * ((c_near + c_tail) - sign * (s_near + s_tail))
    return value, 2.0 * (ec1 + es1 + ec2 + es2)


def response_quadrature(
    scenario: Scenario,
    lam: float,
    epsilons: Optional[Sequence[float]] = None,
    rtol: float = 1e-4,
    atol: float = 1e-10,
) -> QuadratureEstimate:
    """Response function by direct integration, regulator extrapolated to zero.

    For each regulator in the decreasing sequence ``epsilons`` the regulated
    transform is integrated numerically; the values are then extrapolated to
    ``epsilon = 0`` with the interpolating polynomial through all points. The
    error estimate is the change when the largest regulator is dropped.

    Raises
    ------
    ConvergenceError
        If the estimate exceeds ``rtol * |value| + atol``.
    """
    lam = float(lam)
    if lam == 0.0:
        raise UnsupportedFrequencyError("lam must be nonzero")
    eps = np.asarray(default_epsilons(scenario) if epsilons is None else epsilons, dtype=float)
    if eps.size < 3 or np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise ValueError("epsilons must be a strictly decreasing positive sequence of >= 3 entries")

    poles = _real_axis_poles(scenario)
    window = 50.0 / abs(lam)
    if scenario.accel > 0:
        window = max(window, 20.0 / scenario.accel)
    if poles:
        window = max(window, 2.0 * max(poles))

    samples = []
    quad_err = 0.0
    for e in eps:
        v, err = _transform_at(scenario, lam, float(e), window, poles)
        samples.append(v)
        quad_err = max(quad_err, err)
    samples = np.array(samples)

    value = _extrapolate_to_zero(eps, samples)
    previous = _extrapolate_to_zero(eps[1:], samples[1:])
    error = max(abs(value - previous), quad_err)
    if error > rtol * abs(value) + atol:
        raise ConvergenceError(
            f"response quadrature for {scenario.label} at lam={lam:g}: "
            f"error {error:.3g} above tolerance (value {value:.6g})"
        )
    return QuadratureEstimate(float(value), float(error), tuple(eps), tuple(samples))


def _extrapolate_to_zero(x, y) -> float:
    """Neville evaluation at 0 of the polynomial interpolating ``(x, y)``."""
    p = list(map(float, y))
    x = list(map(float, x))
    n = len(x)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i])
    return p[0]
