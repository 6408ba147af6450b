#!/usr/bin/env python3
"""
Brute-force density-matrix oracle on the 2^N-dimensional Fock space (N <= 3).

Jordan-Wigner: a_j = Z ⊗ ... ⊗ Z ⊗ σ ⊗ 1 ⊗ ... with σ = ((0, 1), (0, 0)),
Z = diag(1, -1) on the modes before j. Basis state |n_1 ... n_N>, |0> first.
Majoranas x = (a + a†)/√2, p = i(a - a†)/√2 so {r_n, r_m} = δ_nm.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from fermions.dynamics import evolve_master, integrate_rk4
from fermions.errors import DimensionMismatch, TooManyModes, UnphysicalState
from fermions.generators import GeneratorPair
from fermions.lindblad_bridge import LindbladData, extract_lindblad
from fermions.phase_space import is_physical, normal_form, validate_state
from utils import config

MAX_MODES = 3
ORACLE_STEP = 1e-3
# Dissipator 2LρL† - {L†L, ρ} with L = s·ℓ†r reproduces the (A, C) flow for s = √γ/2.
OPERATOR_SCALE = 0.5

_SIGMA = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_Z = np.diag([1.0, -1.0]).astype(complex)
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class FockOperators:
    N: int
    a: tuple[np.ndarray, ...]
    adag: tuple[np.ndarray, ...]
    x: tuple[np.ndarray, ...]
    p: tuple[np.ndarray, ...]
    n: tuple[np.ndarray, ...]
    parity: np.ndarray

    @property
    def dim(self) -> int:
        return 2**self.N

    @property
    def majoranas(self) -> list[np.ndarray]:
        """(x1, p1, ..., xN, pN)."""
        out: list[np.ndarray] = []
        for xj, pj in zip(self.x, self.p):
            out.extend((xj, pj))
        return out


@dataclass(frozen=True)
class RhoCheck:
    hermitian: float
    trace: float
    min_eigenvalue: float
    parity: float
    ok: bool


def _kron_all(factors: list[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def build_operators(N: int) -> FockOperators:
    if N < 1:
        raise DimensionMismatch(f"mode count must be >= 1, got {N}")
    if N > MAX_MODES:
        raise TooManyModes(f"the Fock oracle handles at most {MAX_MODES} modes, got {N}")
    a, adag, x, p, n = [], [], [], [], []
    for j in range(N):
        aj = _kron_all([_Z] * j + [_SIGMA] + [_I2] * (N - j - 1))
        ajd = aj.conj().T
        a.append(aj)
        adag.append(ajd)
        x.append((aj + ajd) / np.sqrt(2))
        p.append(1j * (aj - ajd) / np.sqrt(2))
        n.append(ajd @ aj)
    parity = _kron_all([_Z] * N)
    return FockOperators(N, tuple(a), tuple(adag), tuple(x), tuple(p), tuple(n), parity)


def car_residual(ops: FockOperators) -> float:
    """Largest violation of {a_i, a_j†} = δ_ij, {a_i, a_j} = 0 and {r_i, r_j} = δ_ij."""
    eye = np.eye(ops.dim)
    worst = 0.0
    for i in range(ops.N):
        for j in range(ops.N):
            anti = ops.a[i] @ ops.adag[j] + ops.adag[j] @ ops.a[i]
            worst = max(worst, float(np.max(np.abs(anti - (i == j) * eye))))
            anti = ops.a[i] @ ops.a[j] + ops.a[j] @ ops.a[i]
            worst = max(worst, float(np.max(np.abs(anti))))
    r = ops.majoranas
    for i, ri in enumerate(r):
        for j, rj in enumerate(r):
            anti = ri @ rj + rj @ ri
            worst = max(worst, float(np.max(np.abs(anti - (i == j) * eye))))
    worst = max(worst, float(np.max(np.abs(ops.parity @ ops.parity - eye))))
    return worst


def quadratic_hamiltonian(H, ops: FockOperators) -> np.ndarray:
    """Ĥ = (i/2) rᵀ H r."""
    H = np.asarray(H, dtype=float)
    r = ops.majoranas
    if H.shape != (len(r), len(r)):
        raise DimensionMismatch(f"H is {H.shape} but the Fock space has {len(r)} Majoranas")
    out = np.zeros((ops.dim, ops.dim), dtype=complex)
    for i, ri in enumerate(r):
        for j, rj in enumerate(r):
            if H[i, j] != 0.0:
                out += H[i, j] * (ri @ rj)
    return 0.5j * out


def heisenberg_residual(H, ops: FockOperators) -> float:
    """max_k ‖i[Ĥ, r_k] - (H r)_k‖."""
    H = np.asarray(H, dtype=float)
    Hq = quadratic_hamiltonian(H, ops)
    r = ops.majoranas
    worst = 0.0
    for k, rk in enumerate(r):
        lhs = 1j * (Hq @ rk - rk @ Hq)
        rhs = sum(H[k, m] * rm for m, rm in enumerate(r))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def gaussian_to_rho(gamma, ops: FockOperators | None = None) -> np.ndarray:
    """
    Gaussian density matrix with covariance Γ.

    With OᵀΓO = ⊕ ν_j ω and rotated Majoranas r̃ = Oᵀr,
    ρ = 2^{-N} Π_j (1 + ν_j · i[r̃_{2j-1}, r̃_{2j}]).
    """
    gamma = validate_state(gamma)
    N = gamma.shape[0] // 2
    ops = ops or build_operators(N)
    if ops.N != N:
        raise DimensionMismatch(f"state has {N} modes but operators were built for {ops.N}")
    physical, violation = is_physical(gamma)
    if not physical:
        raise UnphysicalState(f"Γ violates iΓ <= 1 by {violation:.3e}")
    O, nus = normal_form(gamma)
    r = ops.majoranas
    rotated = [sum(O[m, k] * r[m] for m in range(2 * N)) for k in range(2 * N)]
    rho = np.eye(ops.dim, dtype=complex)
    for j in range(N):
        u, v = rotated[2 * j], rotated[2 * j + 1]
        rho = rho @ (np.eye(ops.dim) + nus[j] * 1j * (u @ v - v @ u))
    return rho / ops.dim


def rho_to_gamma(rho, ops: FockOperators) -> np.ndarray:
    """Γ_nm = i Tr(ρ [r_n, r_m])."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ops.dim, ops.dim):
        raise DimensionMismatch(f"ρ is {rho.shape} but the Fock space is {ops.dim}-dimensional")
    r = ops.majoranas
    dim = len(r)
    gamma = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(i + 1, dim):
            value = float(np.real(1j * np.trace(rho @ (r[i] @ r[j] - r[j] @ r[i]))))
            gamma[i, j] = value
            gamma[j, i] = -value
    return gamma


def is_physical_rho(rho, ops: FockOperators, tol: float = 1e-10) -> RhoCheck:
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    trace_err = abs(complex(np.trace(rho)) - 1.0)
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    parity = float(np.max(np.abs(rho @ ops.parity - ops.parity @ rho)))
    ok = herm <= tol and trace_err <= tol and min_eig >= -tol and parity <= tol
    return RhoCheck(hermitian=herm, trace=trace_err, min_eigenvalue=min_eig, parity=parity, ok=ok)


def lindblad_operators(ld: LindbladData, ops: FockOperators) -> tuple[np.ndarray, list[np.ndarray]]:
    """(Ĥ, [L_α]) with L_α = ½√γ_α ℓ_α† r."""
    if ld.N != ops.N:
        raise DimensionMismatch(f"Lindblad data has {ld.N} modes but operators were built for {ops.N}")
    r = ops.majoranas
    jumps = []
    for rate, ell in ld.channels:
        coeffs = OPERATOR_SCALE * np.sqrt(rate) * np.conj(ell)
        jumps.append(sum(c * rk for c, rk in zip(coeffs, r)))
    return quadratic_hamiltonian(ld.H_eff, ops), jumps


def make_lindblad_rhs(ld: LindbladData, ops: FockOperators):
    H, jumps = lindblad_operators(ld, ops)
    pairs = [(L, L.conj().T, L.conj().T @ L) for L in jumps]

    def rhs(rho: np.ndarray) -> np.ndarray:
        out = -1j * (H @ rho - rho @ H)
        for L, Ld, LdL in pairs:
            out += 2 * L @ rho @ Ld - LdL @ rho - rho @ LdL
        return out

    return rhs


def lindblad_rhs(ld: LindbladData, rho, ops: FockOperators | None = None) -> np.ndarray:
    """ρ̇ = -i[Ĥ, ρ] + Σ_α (2 L_α ρ L_α† - {L_α† L_α, ρ})."""
    ops = ops or build_operators(ld.N)
    return make_lindblad_rhs(ld, ops)(np.asarray(rho, dtype=complex))


def evolve_rho(ld: LindbladData, rho0, t_grid, ops: FockOperators | None = None) -> list[np.ndarray]:
    ops = ops or build_operators(ld.N)
    return integrate_rk4(make_lindblad_rhs(ld, ops), np.asarray(rho0, dtype=complex), t_grid, max_step=ORACLE_STEP)


def cross_validate(gen: GeneratorPair, gamma0, t: float, samples: int = 21, tol: float | None = None) -> float:
    """
    Max over t-samples of ‖Γ(ρ(t)) - Γ(t)‖_max between the density-matrix and
    phase-space evolutions from the same Gaussian state.
    """
    if gen.N > MAX_MODES:
        raise TooManyModes(f"the Fock oracle handles at most {MAX_MODES} modes, got {gen.N}")
    ld = extract_lindblad(gen, tol)
    ops = build_operators(gen.N)
    times = np.linspace(0.0, float(t), max(int(samples), 2))
    traj = evolve_master(gen, gamma0, times, tol=tol)
    rhos = evolve_rho(ld, gaussian_to_rho(gamma0, ops), times, ops)
    return max(float(np.max(np.abs(rho_to_gamma(rho, ops) - g))) for rho, g in zip(rhos, traj.states))


def passes(deviation: float, tol: float | None = None) -> bool:
    return deviation <= config.xcheck_tol(tol)
