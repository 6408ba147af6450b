#!/usr/bin/env python3
"""Dense matrix primitives: Hermitian eigensolves, exponentials, Lyapunov solves, shape checks."""
from __future__ import annotations

import numpy as np
import scipy.linalg

from fermions.errors import (
    DimensionMismatch,
    NonHermitianInput,
    NotAntisymmetric,
    OddDimension,
    SingularLyapunov,
)
from utils import config


def as_matrix(M, label: str = "matrix") -> np.ndarray:
    """Return M as a finite 2-D array, real when it has no imaginary content."""
    arr = np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{label} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionMismatch(f"{label} has non-finite entries")
    if np.iscomplexobj(arr):
        return arr.astype(complex)
    return arr.astype(float)


def require_square(M, label: str = "matrix") -> np.ndarray:
    arr = as_matrix(M, label)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{label} must be square, got shape {arr.shape}")
    return arr


def require_even(M, label: str = "matrix") -> np.ndarray:
    arr = require_square(M, label)
    if arr.shape[0] % 2:
        raise OddDimension(f"{label} has odd dimension {arr.shape[0]}; phase space is 2N-dimensional")
    return arr


def _scale(M: np.ndarray) -> float:
    return float(np.max(np.abs(M))) if M.size else 0.0


def is_hermitian(M, tol: float = config.TOL_STRUCT) -> bool:
    arr = np.asarray(M)
    return bool(np.max(np.abs(arr - arr.conj().T)) <= tol * _scale(arr))


def is_antisymmetric(M, tol: float = config.TOL_STRUCT) -> bool:
    arr = np.asarray(M)
    return bool(np.max(np.abs(arr + arr.T)) <= tol * _scale(arr))


def require_antisymmetric(
    M,
    label: str = "matrix",
    tol: float = config.TOL_STRUCT,
    error: type[NotAntisymmetric] = NotAntisymmetric,
) -> np.ndarray:
    """Validate antisymmetry and name the worst offending entry pair on failure."""
    arr = require_square(M, label)
    defect = np.abs(arr + arr.T)
    if np.max(defect) <= tol * _scale(arr):
        return arr
    i, j = np.unravel_index(int(np.argmax(defect)), defect.shape)
    i, j = (int(i), int(j)) if i <= j else (int(j), int(i))
    raise error(label, i, j, float(arr[i, j]), float(arr[j, i]))


def antisymmetrize(M) -> np.ndarray:
    arr = np.asarray(M)
    return 0.5 * (arr - arr.T)


def symmetrize(M) -> np.ndarray:
    arr = np.asarray(M)
    return 0.5 * (arr + arr.T)


def sort_eigenvalues(values) -> np.ndarray:
    """Ascending by real part, ties broken by imaginary part."""
    vals = np.asarray(values)
    if not np.iscomplexobj(vals):
        return np.sort(vals)
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


def eig_hermitian(M) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and orthonormal eigenvectors of a Hermitian matrix."""
    arr = require_square(M, "Hermitian input")
    if not is_hermitian(arr):
        raise NonHermitianInput(
            f"input deviates from its conjugate transpose by {np.max(np.abs(arr - arr.conj().T)):.3e}"
        )
    herm = 0.5 * (arr + arr.conj().T)
    values, vectors = scipy.linalg.eigh(herm)
    return np.asarray(values, dtype=float), vectors


def expm(M, t: float = 1.0) -> np.ndarray:
    """e^{Mt} by Padé scaling-and-squaring."""
    arr = require_square(M, "exponent")
    return scipy.linalg.expm(arr * t)


def orthogonality_residual(O) -> float:
    arr = require_square(O, "orthogonal matrix")
    return float(np.max(np.abs(arr @ arr.T - np.eye(arr.shape[0]))))


def lyapunov_gap(A) -> float:
    """min |λ_i + λ_j| over the spectrum of A; zero means AS + SAᵀ is singular."""
    lam = scipy.linalg.eigvals(require_square(A, "A"))
    return float(np.min(np.abs(lam[:, None] + lam[None, :])))


def lyapunov_solve(A, C) -> np.ndarray:
    """Solve AS + SAᵀ + C = 0 for S (antisymmetric when C is)."""
    A = require_square(A, "A")
    C = require_square(C, "C")
    if A.shape != C.shape:
        raise DimensionMismatch(f"A is {A.shape} but C is {C.shape}")
    gap = lyapunov_gap(A)
    if gap <= config.TOL_LYAPUNOV:
        raise SingularLyapunov(f"eigenvalue pair of A sums to zero (min |λi+λj| = {gap:.3e})")
    S = scipy.linalg.solve_continuous_lyapunov(A, -C)
    return antisymmetrize(np.real_if_close(S).real)
