"""Parameter sweeps and their CSV serialisation."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from . import correlators
from .dissipator import relative_rate
from .model import AtomConfig, InitialState, InvalidParameterError, Scenario, ScenarioKind
from .phase import Method, compute_phase

VARIABLES = ("accel", "theta", "z")
QUANTITIES = ("delta", "phase", "rate")
DEFAULT_FIXED = {"accel": 1.0, "theta": math.pi / 4, "z": None, "gamma0": 1e-3, "omega_eff": 1.0}
CSV_HEADER_TAIL = ("scenario", "method", "value")


class SweepError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    count: int = 200
    fixed: Dict[str, object] = field(default_factory=dict)
    scenarios: Tuple[ScenarioKind, ...] = (ScenarioKind.LINEAR, ScenarioKind.CIRCULAR)
    methods: Tuple[Method, ...] = (Method.PERTURBATIVE,)
    quantity: str = "delta"

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise SweepError(f"variable must be one of {VARIABLES}, got {self.variable!r}")
        if self.quantity not in QUANTITIES:
            raise SweepError(f"quantity must be one of {QUANTITIES}, got {self.quantity!r}")
        if int(self.count) < 2:
            raise SweepError("count must be >= 2")
        if not float(self.start) < float(self.stop):
            raise SweepError("start must be < stop")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "scenarios", tuple(ScenarioKind(s) for s in self.scenarios))
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        if not self.scenarios or not self.methods:
            raise SweepError("at least one scenario and one method are required")
        if self.quantity == "rate" and Method.PERTURBATIVE in self.methods:
            raise SweepError("the relative rate has no perturbative method")
        merged = dict(DEFAULT_FIXED)
        merged.update({k: v for k, v in self.fixed.items() if v is not None or k == "z"})
        object.__setattr__(self, "fixed", merged)
        # validate the fixed values and both ends of the sweep
        for x in (self.start, self.stop):
            for kind in self.scenarios:
                try:
                    self.point(x, kind)
                except InvalidParameterError as exc:
                    raise SweepError(str(exc)) from exc

    def grid(self) -> np.ndarray:
        return np.linspace(float(self.start), float(self.stop), self.count)

    def point(self, x: float, kind: ScenarioKind):
        values = dict(self.fixed)
        values[self.variable] = float(x)
        atom = AtomConfig(1.0, float(values["gamma0"]), float(values["omega_eff"]))
        z = values["z"]
        scenario = Scenario(kind, float(values["accel"]) if kind is not ScenarioKind.INERTIAL else 0.0,
                            None if z is None else float(z))
        return atom, scenario, InitialState(float(values["theta"]))


def evaluate(spec: SweepSpec, x: float, kind: ScenarioKind, method: Method) -> float:
    atom, scenario, state = spec.point(x, kind)
    if spec.quantity == "rate":
        if method is Method.CLOSED:
            return relative_rate(scenario)
        plus = correlators.response_quadrature(scenario, 1.0).value
        return correlators.response_quadrature(scenario, -1.0).value / plus
    result = compute_phase(atom, scenario, state, method)
    return result.delta_tilde if spec.quantity == "delta" else result.gamma_total


def _evaluate_task(task):
    return evaluate(*task)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> List[Tuple[float, str, str, float]]:
    """Rows ``(x, scenario, method, value)`` ordered variable-major, then scenario, then method."""
    tasks = [(spec, float(x), kind, method) for x in spec.grid() for kind in spec.scenarios for method in spec.methods]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_evaluate_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        values = [_evaluate_task(t) for t in tasks]
    return [(t[1], t[2].value, t[3].value, v) for t, v in zip(tasks, values)]


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def rows_to_csv(variable: str, rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow((variable,) + CSV_HEADER_TAIL)
    for x, scenario, method, value in rows:
        writer.writerow((fmt(x), scenario, method, fmt(value)))
    return buf.getvalue()


def write_csv(path, variable: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(variable, rows))


def read_csv(path):
    """Inverse of :func:`write_csv`; returns ``(variable, rows)``."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [(float(x), s, m, float(v)) for x, s, m, v in reader]
    return header[0], rows


def series(rows, scenario: str, method: str):
    """``(x, y)`` arrays for one scenario/method pair of a sweep."""
    pts = [(x, v) for x, s, m, v in rows if s == scenario and m == method]
    if not pts:
        return np.array([]), np.array([])
    x, y = zip(*pts)
    return np.array(x), np.array(y)
