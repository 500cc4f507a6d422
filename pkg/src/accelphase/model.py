"""Domain types and the dimensionless unit convention.

Every public quantity downstream of :func:`normalize` is expressed with the
atomic level spacing as the unit: accelerations as ``a / omega0``, distances
to the mirror as ``z * omega0`` and phase corrections in units of
``pi**2 * gamma0 / (2 * omega0)``. Natural units ``c = hbar = k_B = 1``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union


class ScenarioKind(str, enum.Enum):
    INERTIAL = "inertial"
    LINEAR = "linear"
    CIRCULAR = "circular"


class InvalidParameterError(ValueError):
    """Raised for non-finite, negative or otherwise unphysical inputs."""


def _finite_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidParameterError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class AtomConfig:
    """Two-level atom.

    ``gamma0`` is the free-space spontaneous emission rate and stands in for
    the coupling constant (``mu**2 = 2*pi*gamma0/omega0``). ``omega_eff`` is
    the Lamb-shifted level spacing; it defaults to ``omega0``.
    """

    omega0: float = 1.0
    gamma0: float = 1e-3
    omega_eff: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "omega0", _finite_positive("omega0", self.omega0))
        object.__setattr__(self, "gamma0", _finite_positive("gamma0", self.gamma0))
        omega_eff = self.omega0 if self.omega_eff is None else self.omega_eff
        object.__setattr__(self, "omega_eff", _finite_positive("omega_eff", omega_eff))
        if not self.weak_coupling:
            warnings.warn(
                f"gamma0/omega0 = {self.gamma0 / self.omega0:g} >= 1; "
                "perturbative phase corrections are not meaningful",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def weak_coupling(self) -> bool:
        return self.gamma0 / self.omega0 < 1.0

    @property
    def coupling_squared(self) -> float:
        return 2.0 * math.pi * self.gamma0 / self.omega0

    @property
    def gamma0_tilde(self) -> float:
        return self.gamma0 / self.omega0

    @property
    def omega_eff_tilde(self) -> float:
        return self.omega_eff / self.omega0


def _check_scenario(kind, accel, boundary):
    kind = ScenarioKind(kind)
    accel = float(accel)
    if not math.isfinite(accel) or accel < 0.0:
        raise InvalidParameterError(f"acceleration must be finite and >= 0, got {accel!r}")
    if kind is ScenarioKind.INERTIAL:
        accel = 0.0
    elif accel == 0.0:
        raise InvalidParameterError(f"{kind.value} motion requires accel > 0")
    if boundary is not None:
        boundary = _finite_positive("boundary distance", boundary)
    return kind, accel, boundary


@dataclass(frozen=True)
class PhysicalScenario:
    """Trajectory with acceleration and mirror distance in physical units."""

    kind: ScenarioKind
    accel: float = 0.0
    boundary: Optional[float] = None

    def __post_init__(self):
        kind, accel, boundary = _check_scenario(self.kind, self.accel, self.boundary)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "accel", accel)
        object.__setattr__(self, "boundary", boundary)


@dataclass(frozen=True)
class Scenario:
    """Trajectory in dimensionless units (accel = a/omega0, boundary = z*omega0).

    ``boundary=None`` means free space. The circular kind always refers to
    the ultrarelativistic limit of circular motion.
    """

    kind: ScenarioKind
    accel: float = 0.0
    boundary: Optional[float] = None

    def __post_init__(self):
        kind, accel, boundary = _check_scenario(self.kind, self.accel, self.boundary)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "accel", accel)
        object.__setattr__(self, "boundary", boundary)

    @classmethod
    def inertial(cls, boundary=None) -> "Scenario":
        return cls(ScenarioKind.INERTIAL, 0.0, boundary)

    @classmethod
    def linear(cls, accel, boundary=None) -> "Scenario":
        return cls(ScenarioKind.LINEAR, accel, boundary)

    @classmethod
    def circular(cls, accel, boundary=None) -> "Scenario":
        return cls(ScenarioKind.CIRCULAR, accel, boundary)

    @property
    def free_space(self) -> bool:
        return self.boundary is None

    def inertial_counterpart(self) -> "Scenario":
        """Inertial atom at the same distance from the mirror."""
        return Scenario.inertial(self.boundary)

    def with_accel(self, accel) -> "Scenario":
        return Scenario(self.kind, accel, self.boundary)

    def with_boundary(self, boundary) -> "Scenario":
        return Scenario(self.kind, self.accel, boundary)

    @property
    def label(self) -> str:
        place = "free" if self.boundary is None else "boundary"
        return f"{self.kind.value}-{place}"


@dataclass(frozen=True)
class InitialState:
    """``cos(theta/2)|+> + sin(theta/2)|->`` with theta in [0, pi]."""

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not (0.0 <= theta <= math.pi):
            raise InvalidParameterError(f"theta must lie in [0, pi], got {theta!r}")
        object.__setattr__(self, "theta", theta)


def accel_to_dimensionless(accel: float, omega0: float) -> float:
    return accel / omega0


def accel_from_dimensionless(accel_tilde: float, omega0: float) -> float:
    return accel_tilde * omega0


def distance_to_dimensionless(z: float, omega0: float) -> float:
    return z * omega0


def distance_from_dimensionless(z_tilde: float, omega0: float) -> float:
    return z_tilde / omega0


def delta_scale(atom: AtomConfig) -> float:
    """Unit of the rescaled phase correction, ``pi**2 gamma0 / (2 omega0)``."""
    return math.pi**2 * atom.gamma0 / (2.0 * atom.omega0)


def normalize(atom: AtomConfig, scenario: Union[PhysicalScenario, Scenario]) -> Scenario:
    """Express a scenario in units of ``atom.omega0``.

    Already-dimensionless :class:`Scenario` objects pass through unchanged, so
    the function is idempotent.
    """
    if isinstance(scenario, Scenario):
        return scenario
    if not isinstance(scenario, PhysicalScenario):
        raise TypeError(f"cannot normalize {type(scenario).__name__}")
    boundary = scenario.boundary
    if boundary is not None:
        boundary = distance_to_dimensionless(boundary, atom.omega0)
    return Scenario(
        scenario.kind,
        accel_to_dimensionless(scenario.accel, atom.omega0),
        boundary,
    )
