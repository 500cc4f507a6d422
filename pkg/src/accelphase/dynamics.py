"""Reduced density matrix of the atom.

Basis ordering is ``(|+>, |->)`` with ``|+>`` the excited level, so
``sigma3 = diag(1, -1)`` and ``H_eff = (Omega/2) sigma3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .dissipator import KossakowskiPair
from .model import InitialState

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class StiffnessError(RuntimeError):
    """The adaptive integrator could not advance (step size underflow)."""


@dataclass(frozen=True)
class EigenTrack:
    lambda_plus: np.ndarray
    lambda_minus: np.ndarray
    theta_tau: np.ndarray
    eta: np.ndarray
    rho3: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    rho: np.ndarray  # shape (n, 2, 2)


def _pair_values(pair):
    if isinstance(pair, KossakowskiPair):
        return pair.a_coeff, pair.b_coeff
    a, b = pair
    return float(a), float(b)


def _relaxation_shift(a, b, tau):
    # (B - A)/(2A) (exp(-4 A tau) - 1), continuous at A = 0
    if a == 0.0:
        return np.zeros_like(tau)
    return (b - a) / (2.0 * a) * np.expm1(-4.0 * a * tau)


def rho_closed(tau, pair, state: InitialState, omega_eff: float = 1.0) -> np.ndarray:
    """Closed-form density matrix at proper time(s) ``tau``.

    Returns shape ``(2, 2)`` for scalar ``tau`` and ``(n, 2, 2)`` otherwise.
    """
    a, b = _pair_values(pair)
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(tau_arr < 0):
        raise ValueError("tau must be >= 0")
    theta = state.theta
    t = np.atleast_1d(tau_arr)
    decay = np.exp(-4.0 * a * t)
    rho11 = decay * np.cos(theta / 2.0) ** 2 + _relaxation_shift(a, b, t)
    rho12 = 0.5 * np.exp(-2.0 * a * t - 1j * omega_eff * t) * np.sin(theta)
    out = np.empty(t.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = rho11
    out[..., 0, 1] = rho12
    out[..., 1, 0] = np.conj(rho12)
    out[..., 1, 1] = 1.0 - rho11
    return out[0] if tau_arr.ndim == 0 else out


def eigen_track(a_coeff: float, b_coeff: float, theta: float, tau) -> EigenTrack:
    """Eigenvalues of ``rho(tau)`` and the mixing angle of the dominant eigenvector.

    ``theta_tau`` is defined through ``tan(theta_tau/2) = sqrt((eta + rho3)/(eta - rho3))``
    and evaluated with ``arctan2`` so that the ``sin(theta) = 0`` limits come out as
    ``pi`` for ``rho3 > 0`` and ``0`` for ``rho3 < 0``. At an instant where
    ``eta = 0`` the value is taken by continuity from earlier times.
    """
    tau = np.asarray(tau, dtype=float)
    decay = np.exp(-4.0 * a_coeff * tau)
    cos_t = np.cos(theta)
    if a_coeff == 0.0:
        rho3 = decay * cos_t
        r = 0.0
    else:
        r = b_coeff / a_coeff
        rho3 = decay * cos_t + r * np.expm1(-4.0 * a_coeff * tau)
    eta = np.sqrt(rho3**2 + decay * np.sin(theta) ** 2)
    theta_tau = 2.0 * np.arctan2(np.sqrt(np.maximum(eta + rho3, 0.0)), np.sqrt(np.maximum(eta - rho3, 0.0)))
    # rho3 decreases in time when Q = R + cos(theta) > 0, so the left limit at eta = 0 is rho3 > 0
    theta_tau = np.where(eta == 0.0, np.pi if r + cos_t > 0 else 0.0, theta_tau)
    return EigenTrack(
        lambda_plus=0.5 * (1.0 + eta),
        lambda_minus=0.5 * (1.0 - eta),
        theta_tau=theta_tau,
        eta=eta,
        rho3=rho3,
    )


def dissipator_matrix(pair) -> np.ndarray:
    """Kossakowski matrix ``a_ij = A d_ij - i B e_ij3 - A d_i3 d_j3``."""
    a, b = _pair_values(pair)
    levi = np.zeros((3, 3, 3))
    levi[0, 1, 2] = levi[1, 2, 0] = levi[2, 0, 1] = 1.0
    levi[0, 2, 1] = levi[2, 1, 0] = levi[1, 0, 2] = -1.0
    eye = np.eye(3)
    return a * eye - 1j * b * levi[:, :, 2] - a * np.outer(eye[2], eye[2])


def liouvillian(pair, omega_eff: float = 1.0) -> np.ndarray:
    """Superoperator acting on row-major ``vec(rho)``; ``vec(X rho Y) = (X kron Y^T) vec(rho)``."""
    kossak = dissipator_matrix(pair)
    eye = np.eye(2)
    h = 0.5 * omega_eff * SIGMA[2]
    sup = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for i in range(3):
        for j in range(3):
            if kossak[i, j] == 0:
                continue
            si, sj = SIGMA[i], SIGMA[j]
            prod = si @ sj
            sup = sup + 0.5 * kossak[i, j] * (
                2.0 * np.kron(sj, si.T) - np.kron(prod, eye) - np.kron(eye, prod.T)
            )
    return sup


# real coordinates x = (rho11, rho22, Re rho12, Im rho12) -> vec(rho) = M x
_TO_VEC = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 1j], [0, 0, 1, -1j], [0, 1, 0, 0]],
    dtype=complex,
)
_FROM_VEC = np.linalg.inv(_TO_VEC)


def real_generator(pair, omega_eff: float = 1.0) -> np.ndarray:
    """Master-equation generator on the four real components of ``rho``."""
    g = _FROM_VEC @ liouvillian(pair, omega_eff) @ _TO_VEC
    if np.max(np.abs(g.imag)) > 1e-12 * max(1.0, np.max(np.abs(g.real))):
        raise AssertionError("generator is not real in the chosen coordinates")
    return g.real


def master_equation_rhs(rho: np.ndarray, pair, omega_eff: float = 1.0) -> np.ndarray:
    """``-i[H_eff, rho] + L[rho]`` for a single 2x2 matrix."""
    return (liouvillian(pair, omega_eff) @ rho.reshape(4)).reshape(2, 2)


def _to_real(rho):
    return np.array([rho[0, 0].real, rho[1, 1].real, rho[0, 1].real, rho[0, 1].imag])


def _from_real(x):
    rho = np.empty(x.shape[1:] + (2, 2), dtype=complex)
    rho[..., 0, 0] = x[0]
    rho[..., 1, 1] = x[1]
    rho[..., 0, 1] = x[2] + 1j * x[3]
    rho[..., 1, 0] = x[2] - 1j * x[3]
    return rho


def lindblad_ode(
    pair,
    state: InitialState,
    omega_eff: float = 1.0,
    t_end: float = 2.0 * np.pi,
    tol: float = 1e-10,
    t_eval=None,
) -> Trajectory:
    """Integrate the master equation numerically from the pure initial state.

    Uses an explicit embedded Runge-Kutta 8(5,3) scheme with ``rtol = atol = tol``.
    The trace is not renormalised; it is conserved only because the generator
    has vanishing trace rows.
    """
    if not (1e-12 <= tol <= 1e-6):
        raise ValueError(f"tol must lie in [1e-12, 1e-6], got {tol!r}")
    gen = real_generator(pair, omega_eff)
    c, s = np.cos(state.theta / 2.0), np.sin(state.theta / 2.0)
    psi = np.array([c, s], dtype=complex)
    x0 = _to_real(np.outer(psi, psi.conj()))
    if t_eval is None:
        t_eval = np.linspace(0.0, t_end, 201)
    sol = solve_ivp(
        lambda _t, x: gen @ x,
        (0.0, t_end),
        x0,
        method="DOP853",
        t_eval=np.asarray(t_eval, dtype=float),
        rtol=tol,
        atol=tol,
    )
    if not sol.success:
        raise StiffnessError(sol.message)
    return Trajectory(sol.t, _from_real(sol.y))


def purity(rho: np.ndarray) -> np.ndarray:
    return np.real(np.einsum("...ij,...ji->...", rho, rho))
