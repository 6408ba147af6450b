#!/usr/bin/env python3
"""
Fermionic Gaussian states as covariance matrices.

Ordering is interleaved, r = (x1, p1, x2, p2, ...), so mode j owns the 2x2
diagonal block at rows/cols (2j-2, 2j-1) and Γ_nm = i<[r_n, r_m]>.
First moments of physical states vanish and are not stored.
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import scipy.linalg

from fermions.errors import DomainError, ModeIndexError, OutOfRangeNu
from fermions.matrix_kernel import antisymmetrize, require_antisymmetric, require_even
from utils import config

OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]])
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
IDENTITY_2 = np.eye(2)


def symplectic_form(N: int) -> np.ndarray:
    if N < 1:
        raise DomainError(f"mode count must be >= 1, got {N}")
    return np.kron(np.eye(N), OMEGA)


def validate_state(gamma, label: str = "gamma") -> np.ndarray:
    """Antisymmetry and even dimension; physicality is checked separately."""
    return require_antisymmetric(require_even(gamma, label), label)


def make_thermal(N: int, nus: Sequence[float]) -> np.ndarray:
    nus = [float(nu) for nu in nus]
    if len(nus) != N:
        raise DomainError(f"expected {N} temperature monotones, got {len(nus)}")
    for j, nu in enumerate(nus, start=1):
        if not -1.0 <= nu <= 1.0:
            raise OutOfRangeNu(f"nu_{j} = {nu} outside [-1, 1]")
    return np.kron(np.diag(nus), OMEGA)


def purity_spectrum(gamma) -> np.ndarray:
    """Eigenvalues of ΓΓᵀ, ascending; all equal to 1 for a pure state."""
    arr = np.asarray(gamma, dtype=float)
    return np.sort(scipy.linalg.eigvalsh(arr @ arr.T))


def is_physical(gamma, tol: float | None = None) -> tuple[bool, float]:
    """(physical?, violation) where violation = max(0, λ_max(ΓΓᵀ) - 1)."""
    lam_max = float(purity_spectrum(validate_state(gamma))[-1])
    violation = max(0.0, lam_max - 1.0)
    return violation <= config.physical_tol(tol), violation


def excitation_number(gamma) -> float:
    arr = validate_state(gamma)
    N = arr.shape[0] // 2
    return N / 2 + 0.25 * float(np.trace(symplectic_form(N) @ arr))


def mode_nu(gamma, j: int) -> float:
    """ν of mode j (1-based): the upper-right entry of its diagonal block."""
    arr = validate_state(gamma)
    N = arr.shape[0] // 2
    if not 1 <= j <= N:
        raise ModeIndexError(f"mode index {j} outside 1..{N}")
    return float(arr[2 * j - 2, 2 * j - 1])


def mode_nus(gamma) -> np.ndarray:
    arr = np.asarray(gamma, dtype=float)
    return np.array([arr[2 * k, 2 * k + 1] for k in range(arr.shape[0] // 2)])


def beta_from_nu(nu: float, E: float) -> float:
    if E <= 0:
        raise DomainError(f"energy must be positive, got {E}")
    if not np.isfinite(nu):
        raise DomainError(f"nu must be finite, got {nu}")
    if abs(nu) >= 1:
        raise DomainError(f"|nu| = {abs(nu)} >= 1 gives infinite inverse temperature")
    return 2.0 / E * float(np.arctanh(nu))


def nu_from_beta(beta: float, E: float) -> float:
    if E <= 0:
        raise DomainError(f"energy must be positive, got {E}")
    return float(np.tanh(beta * E / 2))


def reduced_state(gamma, modes: Sequence[int]) -> np.ndarray:
    """Covariance matrix of the listed modes (1-based, in the order given)."""
    arr = validate_state(gamma)
    N = arr.shape[0] // 2
    idx: list[int] = []
    for j in modes:
        if not 1 <= j <= N:
            raise ModeIndexError(f"mode index {j} outside 1..{N}")
        idx.extend((2 * j - 2, 2 * j - 1))
    return arr[np.ix_(idx, idx)]


def normal_form(gamma, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """
    Orthogonal O and monotones ν with OᵀΓO = ⊕ ν_j ω.

    Built from the eigenvectors of the Hermitian matrix iΓ: an eigenvector
    a + ib at λ > 0 gives the orthonormal pair (√2 b, √2 a) carrying a λω
    block. The zero eigenspace is completed with an orthonormal basis.
    """
    arr = validate_state(gamma)
    dim = arr.shape[0]
    values, vectors = scipy.linalg.eigh(1j * arr)
    scale = max(float(np.max(np.abs(arr))) if dim else 0.0, 1.0)
    columns: list[np.ndarray] = []
    for lam, v in zip(values, vectors.T):
        if lam <= tol * scale:
            continue
        columns.append(np.sqrt(2.0) * v.imag)
        columns.append(np.sqrt(2.0) * v.real)
    if columns:
        basis = np.column_stack(columns)
        rest = scipy.linalg.null_space(basis.T)
        O = np.column_stack([basis, rest]) if rest.size else basis
    else:
        O = np.eye(dim)
    # re-orthonormalize against roundoff in nearly degenerate spectra
    q, r = np.linalg.qr(O)
    O = q * np.sign(np.diag(r))
    blocks = O.T @ arr @ O
    nus = np.array([blocks[2 * k, 2 * k + 1] for k in range(dim // 2)])
    return O, nus


def repair_state(gamma) -> np.ndarray:
    """Clamp the monotones of Γ into [-1, 1]; only ever applied on explicit request."""
    O, nus = normal_form(gamma)
    clamped = np.clip(nus, -1.0, 1.0)
    return antisymmetrize(O @ np.kron(np.diag(clamped), OMEGA) @ O.T)
