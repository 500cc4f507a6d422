"""Sweep definitions behind each reproduced figure."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .sweep import SweepSpec, run_sweep, write_csv

THETA_LABEL = r"$\theta$"
ACCEL_LABEL = r"$a/\omega_0$"
Z_LABEL = r"$z\omega_0$"
DELTA_LABEL = r"$\tilde\delta$"


class OutOfScopeError(LookupError):
    pass


ELECTROMAGNETIC_REFUSAL = (
    "the right panel (electromagnetic field) is out of scope: its curves come from the "
    "electromagnetic-field study of Jin et al. and no formulas for it are implemented here"
)


@dataclass(frozen=True)
class Panel:
    key: str
    title: str
    variable: str
    start: float
    stop: float
    fixed: dict
    quantity: str = "delta"
    methods: tuple = ("perturbative",)

    @property
    def xlabel(self):
        return {"accel": ACCEL_LABEL, "theta": THETA_LABEL, "z": Z_LABEL}[self.variable]

    @property
    def ylabel(self):
        return r"$\Gamma$" if self.quantity == "rate" else DELTA_LABEL

    def spec(self, count: int = 200, a_star: Optional[float] = None) -> SweepSpec:
        fixed = dict(self.fixed)
        if fixed.get("accel") == "a_star":
            fixed["accel"] = a_star
        return SweepSpec(
            self.variable, self.start, self.stop, count, fixed,
            ("linear", "circular"), self.methods, self.quantity,
        )


QUARTER = math.pi / 4

FIGURES = {
    1: {"left": Panel("left", "relative transition rate", "accel", 0.5, 10.0, {}, "rate", ("closed",))},
    2: {"left": Panel("left", r"$\theta=\pi/4$", "accel", 0.5, 10.0, {"theta": QUARTER})},
    3: {
        "a": Panel("a", "a = 2", "theta", 0.0, math.pi, {"accel": 2.0}),
        "b": Panel("b", "a = 2.69", "theta", 0.0, math.pi, {"accel": "a_star"}),
        "c": Panel("c", "a = 5", "theta", 0.0, math.pi, {"accel": 5.0}),
    },
    4: {
        "a": Panel("a", "z = 0.5", "accel", 0.1, 10.0, {"theta": QUARTER, "z": 0.5}),
        "b": Panel("b", "z = 10", "accel", 0.1, 10.0, {"theta": QUARTER, "z": 10.0}),
        "c": Panel("c", "z = 20", "accel", 0.1, 10.0, {"theta": QUARTER, "z": 20.0}),
    },
    5: {
        "a": Panel("a", "a = 0.5", "z", 0.1, 40.0, {"theta": QUARTER, "accel": 0.5}),
        "b": Panel("b", "a = 1", "z", 0.1, 40.0, {"theta": QUARTER, "accel": 1.0}),
        "c": Panel("c", "a = 10", "z", 0.1, 40.0, {"theta": QUARTER, "accel": 10.0}),
    },
    6: {
        "a": Panel("a", "z = 0.5", "theta", 0.0, math.pi, {"accel": 2.0, "z": 0.5}),
        "b": Panel("b", "z = 10", "theta", 0.0, math.pi, {"accel": 2.0, "z": 10.0}),
        "c": Panel("c", "z = 50", "theta", 0.0, math.pi, {"accel": 2.0, "z": 50.0}),
    },
}


def select_panels(fig_id: int, panel: Optional[str] = None):
    if fig_id not in FIGURES:
        raise KeyError(f"figure must be one of {sorted(FIGURES)}, got {fig_id}")
    panels = FIGURES[fig_id]
    if panel is None:
        return list(panels.values())
    if fig_id in (1, 2) and panel == "right":
        raise OutOfScopeError(ELECTROMAGNETIC_REFUSAL)
    if panel not in panels:
        raise KeyError(f"figure {fig_id} has panels {sorted(panels)}, got {panel!r}")
    return [panels[panel]]


def make_figure(fig_id: int, out_dir, panel=None, count=200, data_only=False, jobs=1):
    """Write one CSV per panel (and a vector plot unless ``data_only``)."""
    from .phase import phase_crossing

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    a_star = phase_crossing().accel
    written = []
    drawn = []
    for p in select_panels(fig_id, panel):
        spec = p.spec(count, a_star)
        rows = run_sweep(spec, jobs=jobs)
        path = out_dir / f"fig{fig_id}{p.key}.csv"
        write_csv(path, spec.variable, rows)
        written.append(path)
        drawn.append((p.title, p.xlabel, p.ylabel, rows))
    if not data_only:
        from .plotting import render_panels

        suffix = "" if panel is None else panel
        path = out_dir / f"fig{fig_id}{suffix}.svg"
        render_panels(drawn, path)
        written.append(path)
    return written
