"""Kossakowski coefficients and relative transition rates."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import correlators
from ._roots import bracketed_root
from .model import AtomConfig, InitialState, Scenario


class NonPositiveDissipatorError(ArithmeticError):
    """``A <= 0``; happens only where the mirror factor vanishes."""


@dataclass(frozen=True)
class KossakowskiPair:
    """Coefficients ``A`` and ``B`` of the dissipator, same units as ``gamma0``."""

    a_coeff: float
    b_coeff: float

    @property
    def r(self) -> float:
        return self.b_coeff / self.a_coeff

    def q(self, state) -> float:
        theta = state.theta if isinstance(state, InitialState) else float(state)
        return self.r + math.cos(theta)


@dataclass(frozen=True)
class CrossingResult:
    accel: float
    residual: float
    value: float


def kossakowski(atom: AtomConfig, scenario: Scenario) -> KossakowskiPair:
    """``A, B = (mu^2/4) [G(w0) +- G(-w0)]`` from the closed-form responses."""
    pair = correlators.response_pair(scenario)
    # mu^2 omega0 / 4 = (pi/2) gamma0 ; response functions are dimensionless here
    unit = 0.5 * math.pi * atom.gamma0
    a = unit * (pair.g_plus + pair.g_minus)
    b = unit * (pair.g_plus - pair.g_minus)
    if not a > 0.0:
        raise NonPositiveDissipatorError(
            f"A = {a:g} for {scenario.label} (a={scenario.accel:g}, z={scenario.boundary}); "
            "the atom decouples at this point"
        )
    return KossakowskiPair(a, b)


def relative_rate(scenario: Scenario) -> float:
    """Excitation-to-emission ratio ``G(-w0) / G(w0)``."""
    g_plus = correlators.response_closed(scenario, 1.0)
    if g_plus <= 0.0:
        raise ZeroDivisionError(f"G(+omega0) = {g_plus:g}; relative rate undefined")
    return correlators.response_closed(scenario, -1.0) / g_plus


def rate_difference(accel: float) -> float:
    """Linear minus circular relative rate in free space."""
    return relative_rate(Scenario.linear(accel)) - relative_rate(Scenario.circular(accel))


def rate_crossing(bracket=(0.5, 20.0)) -> CrossingResult:
    """Acceleration at which linear and circular relative rates coincide."""
    root = bracketed_root(rate_difference, *bracket)
    return CrossingResult(root, abs(rate_difference(root)), relative_rate(Scenario.linear(root)))
