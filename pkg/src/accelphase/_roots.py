from __future__ import annotations

import numpy as np
from scipy import optimize


class BracketError(RuntimeError):
    """No (or more than one) sign change inside the requested bracket."""


def sign_changes(f, lo: float, hi: float, step: float):
    """Grid points ``x_i`` with ``f(x_i) * f(x_{i+1}) < 0`` on ``[lo, hi]``."""
    grid = np.arange(lo, hi + 0.5 * step, step)
    grid[-1] = min(grid[-1], hi)
    values = np.array([f(x) for x in grid])
    idx = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]
    return [(grid[i], grid[i + 1]) for i in idx]


def bracketed_root(f, lo: float, hi: float, scan_step: float = 0.01, xtol: float = 1e-13):
    """Unique root of ``f`` on ``[lo, hi]`` by pre-scan and bisection."""
    brackets = sign_changes(f, lo, hi, scan_step)
    if len(brackets) != 1:
        raise BracketError(f"expected one sign change on [{lo}, {hi}], found {len(brackets)}")
    a, b = brackets[0]
    root = optimize.bisect(f, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    return float(root)
