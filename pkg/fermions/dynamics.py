#!/usr/bin/env python3
"""Propagation of covariance matrices: channels, orthogonal flow, master equation."""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from fermions.cp_analysis import GaussianChannel, check_generator_cp
from fermions.errors import (
    DimensionMismatch,
    DomainError,
    NonAntisymmetricH,
    PhysicalityViolation,
    SingularLyapunov,
    TrajectoryDiverged,
    UnphysicalInitialState,
)
from fermions.generators import GeneratorPair
from fermions.matrix_kernel import antisymmetrize, expm, lyapunov_solve, require_antisymmetric
from fermions.phase_space import (
    excitation_number,
    is_physical,
    mode_nus,
    symplectic_form,
    validate_state,
)
from utils import config

METHODS = ("auto", "closed", "rk4")
RK4_MAX_STEP = 1e-3


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: list[np.ndarray]
    nus: np.ndarray
    n_total: np.ndarray
    activity: np.ndarray
    physical: np.ndarray
    violations: np.ndarray
    method: str

    @property
    def N(self) -> int:
        return self.states[0].shape[0] // 2

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def observables(self) -> list[dict[str, object]]:
        return [
            {
                "t": float(t),
                "nus": [float(v) for v in self.nus[k]],
                "n_total": float(self.n_total[k]),
                "activity": float(self.activity[k]),
                "physical": bool(self.physical[k]),
            }
            for k, t in enumerate(self.times)
        ]


@dataclass(frozen=True, eq=False)
class SteadyState:
    gamma: np.ndarray | None
    unique: bool
    stable: bool
    reason: str = ""


def _check_dims(gamma: np.ndarray, dim: int, label: str) -> None:
    if gamma.shape != (dim, dim):
        raise DimensionMismatch(f"{label} is {gamma.shape} but the generator acts on {dim}x{dim}")


def apply_channel(ch: GaussianChannel, gamma) -> np.ndarray:
    gamma = validate_state(gamma)
    _check_dims(gamma, ch.O_A.shape[0], "state")
    return antisymmetrize(ch.O_A @ gamma @ ch.O_A.T + ch.R)


def evolve_orthogonal(H, gamma0, t: float) -> np.ndarray:
    """Γ(t) = e^{Ht} Γ0 e^{Hᵀt} for antisymmetric H."""
    H = require_antisymmetric(H, "H", error=NonAntisymmetricH)
    gamma0 = validate_state(gamma0)
    _check_dims(gamma0, H.shape[0], "state")
    R = expm(H, t)
    return antisymmetrize(R @ gamma0 @ R.T)


def activity_rate(gen: GeneratorPair, gamma) -> float:
    """d<n>/dt at Γ: ¼ Tr((ΩA - (ΩA)ᵀ)Γ + ΩC)."""
    gamma = np.asarray(gamma, dtype=float)
    _check_dims(gamma, gen.dim, "state")
    Omega = symplectic_form(gen.N)
    OA = Omega @ gen.A
    return 0.25 * float(np.trace((OA - OA.T) @ gamma + Omega @ gen.C))


def master_rhs(gen: GeneratorPair) -> Callable[[np.ndarray], np.ndarray]:
    A, At, C = gen.A, gen.A.T, gen.C
    return lambda gamma: A @ gamma + gamma @ At + C


def integrate_rk4(
    rhs: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    t_grid: Sequence[float],
    t0: float = 0.0,
    max_step: float = RK4_MAX_STEP,
) -> list[np.ndarray]:
    """Fixed-step RK4 sampled at t_grid; each interval uses h = min(max_step, Δt/100)."""
    y = np.array(y0, copy=True)
    t = t0
    out: list[np.ndarray] = []
    for target in t_grid:
        span = float(target) - t
        if span > 0:
            steps = max(100, math.ceil(span / max_step - 1e-9))
            h = span / steps
            for _ in range(steps):
                k1 = rhs(y)
                k2 = rhs(y + 0.5 * h * k1)
                k3 = rhs(y + 0.5 * h * k2)
                k4 = rhs(y + h * k3)
                y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            t = float(target)
        out.append(y.copy())
    return out


def _time_grid(t_grid) -> np.ndarray:
    times = np.asarray(t_grid, dtype=float).reshape(-1)
    if times.size == 0:
        raise DomainError("time grid is empty")
    if times[0] < 0:
        raise DomainError(f"times must be non-negative, got {times[0]}")
    if np.any(np.diff(times) <= 0):
        raise DomainError("time grid must be strictly increasing")
    return times


def _check_finite(states: Sequence[np.ndarray], times: np.ndarray, method: str) -> None:
    for t, g in zip(times, states):
        if not np.all(np.isfinite(g)):
            raise TrajectoryDiverged(f"trajectory diverged at t = {t:.6g} (method {method})")


def steady_state(gen: GeneratorPair) -> SteadyState:
    try:
        S = lyapunov_solve(gen.A, gen.C)
    except SingularLyapunov as e:
        return SteadyState(gamma=None, unique=False, stable=False, reason=str(e))
    stable = bool(np.all(np.linalg.eigvals(gen.A).real < 0))
    reason = "" if stable else "fixed point exists but A has eigenvalues with non-negative real part"
    return SteadyState(gamma=S, unique=True, stable=stable, reason=reason)


def evolve_master(
    gen: GeneratorPair,
    gamma0,
    t_grid,
    method: str = "auto",
    tol: float | None = None,
) -> Trajectory:
    """
    Solve dΓ/dt = AΓ + ΓAᵀ + C from Γ(0) = Γ0 at the requested times.

    When the Lyapunov equation has a solution S the path is the closed form
    e^{At}(Γ0 - S)e^{Aᵀt} + S; otherwise (or with method="rk4") fixed-step RK4.
    CP generators must keep every sample physical within TOL_TRAJECTORY.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    gamma0 = validate_state(gamma0, "initial state")
    _check_dims(gamma0, gen.dim, "initial state")
    physical, violation = is_physical(gamma0, tol)
    if not physical:
        raise UnphysicalInitialState(f"initial state violates iΓ <= 1 by {violation:.3e}")
    times = _time_grid(t_grid)

    S = None
    if method in ("auto", "closed"):
        try:
            S = lyapunov_solve(gen.A, gen.C)
        except SingularLyapunov:
            if method == "closed":
                raise
    with np.errstate(over="ignore", invalid="ignore"):
        if S is not None:
            used = "closed"
            offset = gamma0 - S
            states = []
            for t in times:
                E = expm(gen.A, t)
                states.append(antisymmetrize(E @ offset @ E.T + S))
        else:
            used = "rk4"
            states = [antisymmetrize(g) for g in integrate_rk4(master_rhs(gen), gamma0, times)]
    _check_finite(states, times, used)

    cp = check_generator_cp(gen, tol).is_cp
    violations = np.array([is_physical(g, tol)[1] for g in states])
    flags = violations <= config.TOL_TRAJECTORY
    if cp and not np.all(flags):
        k = int(np.argmax(violations))
        raise PhysicalityViolation(
            f"CP evolution left the physical set at t = {times[k]:.6g} (violation {violations[k]:.3e}, method {used})"
        )
    return Trajectory(
        times=times,
        states=states,
        nus=np.array([mode_nus(g) for g in states]),
        n_total=np.array([excitation_number(g) for g in states]),
        activity=np.array([activity_rate(gen, g) for g in states]),
        physical=flags,
        violations=violations,
        method=used,
    )


def propagate(gen: GeneratorPair, gamma0, t: float, method: str = "auto", tol: float | None = None) -> np.ndarray:
    return evolve_master(gen, gamma0, [t], method=method, tol=tol).final


def evolve_batch(
    jobs: Sequence[tuple[GeneratorPair, np.ndarray]],
    t_grid,
    workers: int | None = None,
    method: str = "auto",
) -> list[Trajectory]:
    """Independent (generator, initial state) pairs on a thread pool; order is preserved."""
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(evolve_master, gen, gamma0, t_grid, method) for gen, gamma0 in jobs]
        return [f.result() for f in futures]


def trajectory_header(N: int) -> list[str]:
    dim = 2 * N
    header = ["t"]
    header += [f"gamma_{i + 1}_{j + 1}" for i in range(dim) for j in range(i + 1, dim)]
    header += [f"nu_{j + 1}" for j in range(N)]
    header += ["n_total", "activity", "physical"]
    return header


def trajectory_rows(traj: Trajectory) -> list[list[str]]:
    rows = []
    iu = np.triu_indices(2 * traj.N, k=1)
    for k, t in enumerate(traj.times):
        values = [t, *traj.states[k][iu], *traj.nus[k], traj.n_total[k], traj.activity[k]]
        row = [f"{float(v):.12g}" for v in values]
        row.append("1" if traj.physical[k] else "0")
        rows.append(row)
    return rows
