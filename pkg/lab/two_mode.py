#!/usr/bin/env python3
"""
The g-vector picture of the master equation.

A covariance matrix is flattened to its free parameters: the monotones
ν_1..ν_N first, then the entries above the diagonal blocks, row-major. For
two modes that is g = (ν1, ν2, g1, g2, g3, g4) with
(g1, g2, g3, g4) = (Γ[x1,x2], Γ[x1,p2], Γ[p1,x2], Γ[p1,p2]).
The master equation then reads g' = 𝒜 g + 𝒞.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from fermions.errors import DomainError, WrongModeCount
from fermions.generators import GeneratorPair
from fermions.matrix_kernel import sort_eigenvalues
from fermions.phase_space import validate_state

TWO_MODE_LABELS = ("nu1", "nu2", "g1", "g2", "g3", "g4")


@lru_cache(maxsize=None)
def g_layout(N: int) -> tuple[tuple[int, int], ...]:
    """Matrix positions (row, col) of each g-vector component."""
    pairs = [(2 * j, 2 * j + 1) for j in range(N)]
    for row in range(2 * N):
        for col in range(row + 1, 2 * N):
            if row // 2 != col // 2:
                pairs.append((row, col))
    return tuple(pairs)


def g_labels(N: int) -> tuple[str, ...]:
    if N == 2:
        return TWO_MODE_LABELS
    labels = [f"nu{j + 1}" for j in range(N)]
    labels += [f"G{row + 1}_{col + 1}" for row, col in g_layout(N)[N:]]
    return tuple(labels)


def g_vector(gamma) -> np.ndarray:
    arr = np.asarray(gamma, dtype=float)
    N = arr.shape[0] // 2
    return np.array([arr[row, col] for row, col in g_layout(N)])


def from_g_vector(g, N: int) -> np.ndarray:
    g = np.asarray(g, dtype=float).reshape(-1)
    layout = g_layout(N)
    if g.size != len(layout):
        raise DomainError(f"a {N}-mode g-vector has {len(layout)} entries, got {g.size}")
    gamma = np.zeros((2 * N, 2 * N))
    for value, (row, col) in zip(g, layout):
        gamma[row, col] = value
        gamma[col, row] = -value
    return gamma


def gamma_to_g(gamma) -> np.ndarray:
    arr = validate_state(gamma)
    if arr.shape != (4, 4):
        raise WrongModeCount(f"two-mode g-vector needs N = 2, got N = {arr.shape[0] // 2}")
    return g_vector(arr)


def g_to_gamma(g) -> np.ndarray:
    g = np.asarray(g, dtype=float).reshape(-1)
    if g.size != 6:
        raise WrongModeCount(f"two-mode g-vector has 6 entries, got {g.size}")
    return from_g_vector(g, 2)


@dataclass(frozen=True, eq=False)
class GSystem:
    """g' = a_matrix @ g + c_vector."""

    a_matrix: np.ndarray
    c_vector: np.ndarray

    @property
    def N(self) -> int:
        # dimension is N(2N - 1)
        n = self.a_matrix.shape[0]
        return int(round((1 + np.sqrt(1 + 8 * n)) / 4))

    def rhs(self, g) -> np.ndarray:
        return self.a_matrix @ np.asarray(g, dtype=float) + self.c_vector


def build_linear_system(gen: GeneratorPair) -> GSystem:
    N = gen.N
    size = len(g_layout(N))
    columns = []
    for k in range(size):
        basis = from_g_vector(np.eye(size)[k], N)
        columns.append(g_vector(gen.A @ basis + basis @ gen.A.T))
    return GSystem(a_matrix=np.column_stack(columns), c_vector=g_vector(gen.C))


def build_g_system(gen: GeneratorPair) -> GSystem:
    if gen.N != 2:
        raise WrongModeCount(f"the six-parameter system needs N = 2, got N = {gen.N}")
    return build_linear_system(gen)


@dataclass(frozen=True, eq=False)
class SpectralReport:
    eigenvalues: np.ndarray
    squared_eigenvalues: np.ndarray
    # rows are left functionals v with vᵀ(𝒜g + 𝒞) = 0
    conserved: np.ndarray
    # (angular frequency, rows spanning the left eigenspace of 𝒜² at -frequency²)
    oscillating: list[tuple[float, np.ndarray]] = field(default_factory=list)


def _distinct(values: np.ndarray, tol: float) -> list[float]:
    out: list[float] = []
    for v in np.sort(values):
        if not out or abs(v - out[-1]) > tol * max(1.0, abs(v)):
            out.append(float(v))
    return out


def spectral_report(sys: GSystem, tol: float = 1e-10) -> SpectralReport:
    a = sys.a_matrix
    squared = a @ a
    conserved = scipy.linalg.null_space(np.column_stack([a, sys.c_vector]).T, rcond=tol).T
    sq_vals = scipy.linalg.eigvals(squared)
    negative = sq_vals.real[(np.abs(sq_vals.imag) <= 1e-8) & (sq_vals.real < -1e-8)]
    oscillating = []
    for mu in _distinct(negative, 1e-8):
        rows = scipy.linalg.null_space((squared - mu * np.eye(a.shape[0])).T, rcond=1e-8).T
        if rows.size:
            oscillating.append((float(np.sqrt(-mu)), rows))
    return SpectralReport(
        eigenvalues=sort_eigenvalues(scipy.linalg.eigvals(a)),
        squared_eigenvalues=sort_eigenvalues(sq_vals),
        conserved=conserved,
        oscillating=oscillating,
    )


def match_spectra(computed, predicted, tol: float = 1e-10) -> tuple[bool, float]:
    """Multiset match by optimal assignment; returns (ok, worst pair distance)."""
    computed = np.asarray(computed, dtype=complex).reshape(-1)
    predicted = np.asarray(predicted, dtype=complex).reshape(-1)
    if computed.size != predicted.size:
        return False, float("inf")
    cost = np.abs(computed[:, None] - predicted[None, :])
    rows, cols = linear_sum_assignment(cost)
    worst = float(cost[rows, cols].max()) if computed.size else 0.0
    scale = max(1.0, float(np.max(np.abs(predicted))) if predicted.size else 1.0)
    return worst <= tol * scale, worst


def in_row_span(rows, v, tol: float = 1e-8) -> bool:
    """Whether v lies in the span of the given rows."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    v = np.asarray(v, dtype=float)
    if rows.size == 0:
        return bool(np.linalg.norm(v) <= tol)
    basis = scipy.linalg.orth(rows.T)
    residual = v - basis @ (basis.T @ v)
    return bool(np.linalg.norm(residual) <= tol * max(1.0, float(np.linalg.norm(v))))


def combination_label(v, labels: tuple[str, ...] = TWO_MODE_LABELS, tol: float = 1e-9) -> str:
    """Readable form such as "nu1-nu2+g1-g4", scaled so the leading coefficient is 1."""
    v = np.asarray(v, dtype=float)
    nz = np.flatnonzero(np.abs(v) > tol * max(1.0, float(np.max(np.abs(v)))))
    if nz.size == 0:
        return "0"
    v = v / v[nz[0]]
    parts: list[str] = []
    for k in nz:
        magnitude = abs(v[k])
        term = labels[k] if abs(magnitude - 1) <= 1e-9 else f"{magnitude:.6g}*{labels[k]}"
        sign = "-" if v[k] < 0 else ("+" if parts else "")
        parts.append(sign + term)
    return "".join(parts)


def long_time_limit(sys: GSystem, g0, tol: float = 1e-9) -> np.ndarray:
    """
    lim_{t→∞} g(t) when every non-zero eigenvalue of 𝒜 decays and 𝒞 does not
    drive the conserved directions. The kernel part of g0 is kept (spectral
    projector onto ker 𝒜) and the rest relaxes to a particular solution.
    """
    a, c = sys.a_matrix, sys.c_vector
    g0 = np.asarray(g0, dtype=float)
    vals = scipy.linalg.eigvals(a)
    nonzero = vals[np.abs(vals) > tol]
    if np.any(nonzero.real >= -tol):
        raise DomainError("𝒜 has non-decaying modes besides its kernel; no long-time limit")
    right = scipy.linalg.null_space(a, rcond=tol)
    left = scipy.linalg.null_space(a.T, rcond=tol)
    if right.shape[1] != left.shape[1]:
        raise DomainError("zero eigenvalue of 𝒜 is not semisimple")
    if right.size:
        if np.linalg.norm(left.T @ c) > tol * max(1.0, float(np.linalg.norm(c))):
            raise DomainError("𝒞 drives a conserved direction; g grows without bound")
        projector = right @ np.linalg.solve(left.T @ right, left.T)
    else:
        projector = np.zeros_like(a)
    particular = np.linalg.lstsq(a, -c, rcond=None)[0]
    particular = particular - projector @ particular
    return projector @ g0 + particular
