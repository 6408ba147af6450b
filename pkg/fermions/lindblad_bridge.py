#!/usr/bin/env python3
"""
Translation between generators (A, C) and Lindblad data.

H_eff = A_O and -2A_N - iC = Σ_α γ_α ℓ_α ℓ_α†. The Lindblad operators are
linear in the Majoranas, L_α ∝ √γ_α ℓ_α† r. Channel vectors inside a
degenerate rate are only defined up to a unitary, so comparisons go through
spectral_projectors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fermions.errors import DimensionMismatch, NotCompletelyPositive
from fermions.generators import GeneratorPair, split_orthogonal
from fermions.matrix_kernel import antisymmetrize, eig_hermitian, require_antisymmetric, symmetrize
from utils import config


@dataclass(frozen=True, eq=False)
class LindbladData:
    H_eff: np.ndarray
    rates: np.ndarray
    # columns are the unit vectors ℓ_α
    vectors: np.ndarray

    def __post_init__(self):
        H = require_antisymmetric(self.H_eff, "H_eff")
        rates = np.asarray(self.rates, dtype=float).reshape(-1)
        vectors = np.asarray(self.vectors, dtype=complex)
        if vectors.size == 0:
            vectors = np.zeros((H.shape[0], 0), dtype=complex)
        if vectors.ndim != 2 or vectors.shape[0] != H.shape[0]:
            raise DimensionMismatch(f"channel vectors must be {H.shape[0]} x k, got {vectors.shape}")
        if vectors.shape[1] != rates.size:
            raise DimensionMismatch(f"{rates.size} rates but {vectors.shape[1]} channel vectors")
        object.__setattr__(self, "H_eff", H)
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "vectors", vectors)

    @property
    def N(self) -> int:
        return self.H_eff.shape[0] // 2

    @property
    def channels(self) -> list[tuple[float, np.ndarray]]:
        return [(float(g), self.vectors[:, k]) for k, g in enumerate(self.rates)]

    def dissipator_matrix(self) -> np.ndarray:
        """Σ γ_α ℓ_α ℓ_α†."""
        return (self.vectors * self.rates) @ self.vectors.conj().T


def dissipation_matrix(gen: GeneratorPair) -> np.ndarray:
    """The Hermitian matrix -2A_N - iC whose spectrum gives the rates."""
    _, A_N = split_orthogonal(gen.A)
    return -2 * A_N - 1j * gen.C


def extract_lindblad(gen: GeneratorPair, tol: float | None = None) -> LindbladData:
    H_eff, _ = split_orthogonal(gen.A)
    values, vectors = eig_hermitian(dissipation_matrix(gen))
    if values.size and values[0] < -config.cp_tol(tol):
        raise NotCompletelyPositive(
            f"rate {values[0]:.6g} is negative; add at least {-values[0] / 2:.6g} of isotropic noise"
        )
    keep = values > config.TOL_RATE
    return LindbladData(H_eff=H_eff, rates=values[keep], vectors=vectors[:, keep])


def rebuild_generator(ld: LindbladData, name: str = "") -> GeneratorPair:
    M = ld.dissipator_matrix()
    A_N = symmetrize(-M.real / 2)
    C = antisymmetrize(-M.imag)
    return GeneratorPair(ld.H_eff + A_N, C, name)


def spectral_projectors(ld: LindbladData, tol: float = 1e-8) -> list[tuple[float, np.ndarray]]:
    """(rate, projector) per distinct rate, ascending."""
    groups: list[tuple[float, list[int]]] = []
    for k in np.argsort(ld.rates):
        rate = float(ld.rates[k])
        if groups and abs(rate - groups[-1][0]) <= tol * max(1.0, abs(rate)):
            groups[-1][1].append(int(k))
        else:
            groups.append((rate, [int(k)]))
    projectors = []
    for rate, idx in groups:
        V = ld.vectors[:, idx]
        projectors.append((rate, V @ V.conj().T))
    return projectors


def majorana_label(k: int) -> str:
    return f"{'xp'[k % 2]}_{k // 2 + 1}"


def _clean(value: complex, tol: float) -> complex | float:
    value = complex(value)
    if abs(value.imag) <= tol:
        return float(value.real)
    if abs(value.real) <= tol:
        return complex(0.0, value.imag)
    return value


def effective_hamiltonian_operator(H_eff) -> list[tuple[complex | float, str]]:
    """
    Terms of Ĥ = (i/2) rᵀ H r in ladder operators.

    Labels are ASCII: "n_j" for a_j^+ a_j, "a_i a_j^+" and friends for
    pairs, "1" for the constant. For H = -E ω this gives E(n_1 - 1/2).
    """
    H = require_antisymmetric(H_eff, "H_eff")
    N = H.shape[0] // 2
    tol = config.TOL_STRUCT * max(float(np.max(np.abs(H))) if H.size else 0.0, 1.0)
    terms: list[tuple[complex | float, str]] = []
    constant = 0.0
    for j in range(N):
        h = H[2 * j, 2 * j + 1]
        if abs(h) > tol:
            terms.append((float(-h), f"n_{j + 1}"))
            constant += h / 2
    for i in range(N):
        for j in range(i + 1, N):
            hxx = H[2 * i, 2 * j]
            hxp = H[2 * i, 2 * j + 1]
            hpx = H[2 * i + 1, 2 * j]
            hpp = H[2 * i + 1, 2 * j + 1]
            pair = (
                (0.5j * (hxx - hpp) - 0.5 * (hxp + hpx), f"a_{i + 1} a_{j + 1}"),
                (0.5j * (hxx + hpp) + 0.5 * (hxp - hpx), f"a_{i + 1} a_{j + 1}^+"),
                (0.5j * (hxx + hpp) - 0.5 * (hxp - hpx), f"a_{i + 1}^+ a_{j + 1}"),
                (0.5j * (hxx - hpp) + 0.5 * (hxp + hpx), f"a_{i + 1}^+ a_{j + 1}^+"),
            )
            for coeff, label in pair:
                if abs(coeff) > tol:
                    terms.append((_clean(coeff, tol), label))
    if abs(constant) > tol:
        terms.append((float(constant), "1"))
    return terms


def render_lindblad_operator(rate: float, ell, tol: float = 1e-12) -> dict[str, list[tuple[complex | float, str]]]:
    """
    Terms of √γ ℓ† r in Majorana and in ladder form.

    The density-matrix oracle applies an extra factor 1/2 to this operator so
    that its dissipator reproduces the (A, C) flow with {r_n, r_m} = δ_nm.
    """
    ell = np.asarray(ell, dtype=complex).reshape(-1)
    coeffs = np.sqrt(max(rate, 0.0)) * ell.conj()
    majorana = [(_clean(c, tol), majorana_label(k)) for k, c in enumerate(coeffs) if abs(c) > tol]
    ladder: list[tuple[complex | float, str]] = []
    for j in range(ell.size // 2):
        cx, cp = coeffs[2 * j], coeffs[2 * j + 1]
        on_a = (cx + 1j * cp) / np.sqrt(2)
        on_adag = (cx - 1j * cp) / np.sqrt(2)
        if abs(on_a) > tol:
            ladder.append((_clean(on_a, tol), f"a_{j + 1}"))
        if abs(on_adag) > tol:
            ladder.append((_clean(on_adag, tol), f"a_{j + 1}^+"))
    return {"majorana": majorana, "ladder": ladder}


def format_terms(terms: list[tuple[complex | float, str]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for coeff, label in terms:
        if isinstance(coeff, complex):
            text = f"({coeff.real:.6g}{coeff.imag:+.6g}i)"
        else:
            text = f"{coeff:.6g}"
        pieces.append(text if label == "1" else f"{text} {label}")
    return " + ".join(pieces)
