#!/usr/bin/env python3
"""
Generator pairs (A, C) of dΓ/dt = AΓ + ΓAᵀ + C and their nine-class partition.

A is split twice, orthogonal/non-orthogonal (antisymmetric/symmetric part) and
active/passive (with respect to Ω), then each part into its single-mode
(block-diagonal) and multi-mode remainder. C is non-orthogonal by definition;
its single-mode part is active and its multi-mode part passive.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fermions.errors import DimensionMismatch, WrongModeCount
from fermions.matrix_kernel import require_antisymmetric, require_even
from fermions.phase_space import IDENTITY_2, OMEGA, PAULI_X, PAULI_Z, symplectic_form
from utils import config

# Table layout: key -> display name, in the order rows are reported.
CLASS_NAMES: dict[str, str] = {
    "A_OP^S": "Free Evolution",
    "A_NP^S": "Correlation Shielding",
    "A_NA^S": "Noise",
    "C_NA^S": "Purifying",
    "A_OP^M": "Multi-mode Rotation",
    "A_OA^M": "Multi-mode Counter Rotation",
    "A_NA^M": "Multi-mode Active Corr. Shielding",
    "C_NP^M": "Correlating",
    "A_NP^M": "Multi-mode Passive Corr. Shielding",
}

# The seven cells of the sixteen-way split that no generator can populate.
IMPOSSIBLE_CLASSES: dict[str, str] = {
    "C_OP^S": "state-independent terms are never orthogonal",
    "A_OA^S": "diagonal blocks of an antisymmetric matrix carry no X or Z part",
    "C_OA^S": "state-independent terms are never orthogonal",
    "C_NP^S": "single-mode blocks of an antisymmetric C are multiples of ω",
    "C_OP^M": "state-independent terms are never orthogonal",
    "C_OA^M": "state-independent terms are never orthogonal",
    "C_NA^M": "the active part of C is block-diagonal by construction",
}

# (single-mode?, orthogonal?, passive?, state-dependent?) for every cell.
CLASS_TRAITS: dict[str, tuple[bool, bool, bool, bool]] = {
    "A_OP^S": (True, True, True, True),
    "C_OP^S": (True, True, True, False),
    "A_OA^S": (True, True, False, True),
    "C_OA^S": (True, True, False, False),
    "A_NP^S": (True, False, True, True),
    "C_NP^S": (True, False, True, False),
    "A_NA^S": (True, False, False, True),
    "C_NA^S": (True, False, False, False),
    "A_OP^M": (False, True, True, True),
    "C_OP^M": (False, True, True, False),
    "A_OA^M": (False, True, False, True),
    "C_OA^M": (False, True, False, False),
    "A_NP^M": (False, False, True, True),
    "C_NP^M": (False, False, True, False),
    "A_NA^M": (False, False, False, True),
    "C_NA^M": (False, False, False, False),
}


@dataclass(frozen=True, eq=False)
class GeneratorPair:
    A: np.ndarray
    C: np.ndarray
    name: str = ""

    def __post_init__(self):
        A = require_even(self.A, "A")
        C = require_antisymmetric(require_even(self.C, "C"), "C")
        if A.shape != C.shape:
            raise DimensionMismatch(f"A is {A.shape} but C is {C.shape}")
        if np.iscomplexobj(A) or np.iscomplexobj(C):
            raise DimensionMismatch("A and C must be real")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "C", C)

    @property
    def N(self) -> int:
        return self.A.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True, eq=False)
class BasisExpansion:
    """Coefficient matrices of M = A_1⊗1 + A_w⊗ω + A_x⊗X + A_z⊗Z."""

    A_1: np.ndarray
    A_w: np.ndarray
    A_x: np.ndarray
    A_z: np.ndarray

    def reassemble(self) -> np.ndarray:
        return (
            np.kron(self.A_1, IDENTITY_2)
            + np.kron(self.A_w, OMEGA)
            + np.kron(self.A_x, PAULI_X)
            + np.kron(self.A_z, PAULI_Z)
        )


@dataclass(frozen=True, eq=False)
class PartitionReport:
    parts: dict[str, np.ndarray]
    norms: dict[str, float]
    present: dict[str, bool]
    # norms of the structurally empty cells; nonzero only through roundoff
    residuals: dict[str, float] = field(default_factory=dict)

    def a_total(self) -> np.ndarray:
        return sum(m for key, m in self.parts.items() if key.startswith("A_"))

    def c_total(self) -> np.ndarray:
        return sum(m for key, m in self.parts.items() if key.startswith("C_"))

    def present_names(self) -> list[str]:
        return [CLASS_NAMES[key] for key in CLASS_NAMES if self.present[key]]


@dataclass(frozen=True)
class ClassSummary:
    present: tuple[str, ...]
    names: tuple[str, ...]
    impossible: tuple[str, ...]


def expand_basis(M) -> BasisExpansion:
    arr = require_even(M, "matrix")
    blocks = arr.reshape(arr.shape[0] // 2, 2, arr.shape[1] // 2, 2)
    b11 = blocks[:, 0, :, 0]
    b12 = blocks[:, 0, :, 1]
    b21 = blocks[:, 1, :, 0]
    b22 = blocks[:, 1, :, 1]
    return BasisExpansion(
        A_1=(b11 + b22) / 2,
        A_w=(b12 - b21) / 2,
        A_x=(b12 + b21) / 2,
        A_z=(b11 - b22) / 2,
    )


def split_orthogonal(A) -> tuple[np.ndarray, np.ndarray]:
    """(A_O, A_N): antisymmetric and symmetric parts."""
    A = np.asarray(A, dtype=float)
    return 0.5 * (A - A.T), 0.5 * (A + A.T)


def split_active(A, Omega=None) -> tuple[np.ndarray, np.ndarray]:
    """(A_A, A_P) with Ω·A_A antisymmetric and Ω·A_P symmetric."""
    A = np.asarray(A, dtype=float)
    if Omega is None:
        Omega = symplectic_form(require_even(A, "A").shape[0] // 2)
    Omega = np.asarray(Omega, dtype=float)
    if Omega.shape != A.shape:
        raise DimensionMismatch(f"Ω is {Omega.shape} but A is {A.shape}")
    mirrored = Omega @ A.T @ Omega
    return 0.5 * (A - mirrored), 0.5 * (A + mirrored)


def single_mode_mask(dim: int) -> np.ndarray:
    return np.kron(np.eye(dim // 2), np.ones((2, 2)))


def block_diagonal(M) -> np.ndarray:
    """Single-mode part: the 2x2 diagonal blocks of M, zero elsewhere."""
    arr = np.asarray(M, dtype=float)
    return arr * single_mode_mask(arr.shape[0])


def partition(gen: GeneratorPair) -> PartitionReport:
    Omega = symplectic_form(gen.N)
    A_O, A_N = split_orthogonal(gen.A)
    A_OA, A_OP = split_active(A_O, Omega)
    A_NA, A_NP = split_active(A_N, Omega)

    C_NA = np.kron(np.diag(expand_basis(gen.C).A_w.diagonal()), OMEGA)
    C_NP = gen.C - C_NA

    parts: dict[str, np.ndarray] = {}
    for key, total in (("A_OP", A_OP), ("A_NA", A_NA), ("A_NP", A_NP)):
        single = block_diagonal(total)
        parts[f"{key}^S"] = single
        parts[f"{key}^M"] = total - single
    parts["A_OA^M"] = A_OA
    parts["C_NA^S"] = C_NA
    parts["C_NP^M"] = C_NP

    ordered = {key: parts[key] for key in CLASS_NAMES}
    norms = {key: float(np.linalg.norm(m)) for key, m in ordered.items()}
    present = {key: norms[key] > config.TOL_CLASS for key in ordered}
    residuals = {
        "A_OA^S": float(np.linalg.norm(block_diagonal(A_OA))),
        "C_NA^M": float(np.linalg.norm(C_NA - block_diagonal(C_NA))),
        "C_NP^S": float(np.linalg.norm(block_diagonal(C_NP))),
    }
    return PartitionReport(parts=ordered, norms=norms, present=present, residuals=residuals)


def classify(gen: GeneratorPair) -> ClassSummary:
    report = partition(gen)
    keys = tuple(key for key in CLASS_NAMES if report.present[key])
    return ClassSummary(
        present=keys,
        names=tuple(CLASS_NAMES[key] for key in keys),
        impossible=tuple(IMPOSSIBLE_CLASSES),
    )


def single_mode_parameters(gen: GeneratorPair) -> dict[str, float]:
    """A = a_op ω - a_na 1 + a_np_x X + a_np_z Z and C = c_na ω for one mode."""
    if gen.N != 1:
        raise WrongModeCount(f"single-mode parameters need N = 1, got N = {gen.N}")
    exp = expand_basis(gen.A)
    return {
        "a_op": float(exp.A_w[0, 0]),
        "a_na": float(-exp.A_1[0, 0]),
        "a_np_x": float(exp.A_x[0, 0]),
        "a_np_z": float(exp.A_z[0, 0]),
        "c_na": float(gen.C[0, 1]),
    }


def is_passive(gen: GeneratorPair, tol: float = config.TOL_RATE) -> bool:
    """True when d<n>/dt vanishes for every state: ΩA symmetric and Tr(ΩC) = 0."""
    Omega = symplectic_form(gen.N)
    OA = Omega @ gen.A
    return bool(np.max(np.abs(OA - OA.T)) <= tol and abs(np.trace(Omega @ gen.C)) <= tol)


def is_orthogonal_generator(gen: GeneratorPair, tol: float = config.TOL_STRUCT) -> bool:
    return bool(np.max(np.abs(gen.C)) <= tol and np.max(np.abs(gen.A + gen.A.T)) <= tol)


# --- builders for the canonical scenarios -------------------------------------

def _embed_single(A1: np.ndarray, C1: np.ndarray, n_modes: int, name: str) -> GeneratorPair:
    """Place a one-mode generator on mode 1 of an n_modes system."""
    if n_modes < 1:
        raise WrongModeCount(f"need at least one mode, got {n_modes}")
    dim = 2 * n_modes
    A = np.zeros((dim, dim))
    C = np.zeros((dim, dim))
    A[:2, :2] = A1
    C[:2, :2] = C1
    return GeneratorPair(A, C, name)


def _two_mode(A11, A12, A21, A22, C12=None, name: str = "") -> GeneratorPair:
    A = np.block([[A11, A12], [A21, A22]])
    C = np.zeros((4, 4))
    if C12 is not None:
        C[:2, 2:] = C12
        C[2:, :2] = -np.asarray(C12).T
    return GeneratorPair(A, C, name)


def free_evolution(*energies: float) -> GeneratorPair:
    """A = ⊕ -E_j ω: each mode rotates at its own energy."""
    if not energies:
        raise WrongModeCount("free evolution needs at least one energy")
    A = np.kron(np.diag([-float(E) for E in energies]), OMEGA)
    return GeneratorPair(A, np.zeros_like(A), "Free Evolution")


def noise(r: float, n_modes: int = 1) -> GeneratorPair:
    return _embed_single(-r * IDENTITY_2, np.zeros((2, 2)), n_modes, "Noise")


def purifying(r: float, c: float, n_modes: int = 1) -> GeneratorPair:
    return _embed_single(-r * IDENTITY_2, c * OMEGA, n_modes, "Purifying")


def correlation_shielding(r: float, b_x: float = 0.0, b_z: float = 0.0, n_modes: int = 1) -> GeneratorPair:
    A1 = -r * IDENTITY_2 + b_x * PAULI_X + b_z * PAULI_Z
    return _embed_single(A1, np.zeros((2, 2)), n_modes, "Correlation Shielding")


def multimode_rotation(b_w: float, b_1: float = 0.0) -> GeneratorPair:
    """Orthogonal passive exchange, Ĥ = (b_w + i b_1) a_1 a_2^+ + h.c. up to sign."""
    zero = np.zeros((2, 2))
    return _two_mode(
        zero, b_w * OMEGA + b_1 * IDENTITY_2,
        b_w * OMEGA - b_1 * IDENTITY_2, zero,
        name="Multi-mode Rotation",
    )


def counter_rotation(b_x: float, b_z: float = 0.0) -> GeneratorPair:
    coupling = b_x * PAULI_X + b_z * PAULI_Z
    zero = np.zeros((2, 2))
    return _two_mode(zero, coupling, -coupling, zero, name="Multi-mode Counter Rotation")


def active_shielding(r: float, b_w: float, b_1: float = 0.0) -> GeneratorPair:
    noise_block = -r * IDENTITY_2
    return _two_mode(
        noise_block, b_1 * IDENTITY_2 + b_w * OMEGA,
        b_1 * IDENTITY_2 - b_w * OMEGA, noise_block,
        name="Multi-mode Active Corr. Shielding",
    )


def passive_shielding(r: float, b_x: float, b_z: float = 0.0) -> GeneratorPair:
    coupling = b_x * PAULI_X + b_z * PAULI_Z
    noise_block = -r * IDENTITY_2
    return _two_mode(noise_block, coupling, coupling, noise_block, name="Multi-mode Passive Corr. Shielding")


def correlating(r: float, c1: float, c2: float, c3: float, c4: float) -> GeneratorPair:
    """Noise on both modes plus C with off-diagonal block ((c1, c2), (c3, c4))."""
    noise_block = -r * IDENTITY_2
    zero = np.zeros((2, 2))
    return _two_mode(
        noise_block, zero, zero, noise_block,
        C12=np.array([[c1, c2], [c3, c4]], dtype=float),
        name="Correlating",
    )
