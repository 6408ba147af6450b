#!/usr/bin/env python3
"""Complete-positivity certificates for Gaussian channels and generators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fermions.errors import DimensionMismatch, NonOrthogonalJoint, UnphysicalEnvironment
from fermions.generators import GeneratorPair, partition
from fermions.matrix_kernel import (
    eig_hermitian,
    orthogonality_residual,
    require_antisymmetric,
    require_even,
    symmetrize,
)
from fermions.phase_space import is_physical, validate_state
from utils import config


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    """Γ -> O_A Γ O_Aᵀ + R."""

    O_A: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        O_A = require_even(self.O_A, "O_A")
        R = require_antisymmetric(require_even(self.R, "R"), "R")
        if O_A.shape != R.shape:
            raise DimensionMismatch(f"O_A is {O_A.shape} but R is {R.shape}")
        object.__setattr__(self, "O_A", O_A)
        object.__setattr__(self, "R", R)

    @property
    def N(self) -> int:
        return self.O_A.shape[0] // 2


@dataclass(frozen=True, eq=False)
class CpVerdict:
    is_cp: bool
    min_eigenvalue: float
    certificate: np.ndarray


def _verdict(certificate: np.ndarray, tol: float | None) -> CpVerdict:
    values, _ = eig_hermitian(certificate)
    min_eig = float(values[0])
    return CpVerdict(is_cp=min_eig >= -config.cp_tol(tol), min_eigenvalue=min_eig, certificate=certificate)


def check_channel_cp(ch: GaussianChannel, tol: float | None = None) -> CpVerdict:
    """CP iff I - O_A O_Aᵀ - iR is positive semidefinite."""
    certificate = np.eye(ch.O_A.shape[0]) - symmetrize(ch.O_A @ ch.O_A.T) - 1j * ch.R
    return _verdict(certificate, tol)


def check_generator_cp(gen: GeneratorPair, tol: float | None = None) -> CpVerdict:
    """CP iff A + Aᵀ + iC is negative semidefinite."""
    certificate = -(gen.A + gen.A.T + 1j * gen.C)
    return _verdict(certificate, tol)


def noise_deficit(gen: GeneratorPair) -> float:
    """Smallest s >= 0 such that (A - s·I, C) is CP."""
    values, _ = eig_hermitian(gen.A + gen.A.T + 1j * gen.C)
    return max(0.0, float(values[-1])) / 2


def repair_noise(gen: GeneratorPair, extra: float = 0.0) -> GeneratorPair:
    s = noise_deficit(gen) + extra
    return GeneratorPair(gen.A - s * np.eye(gen.dim), gen.C, gen.name)


def trace_diagnostic(gen: GeneratorPair, tol: float | None = None) -> tuple[float, bool]:
    """Tr(A_N), and whether it is consistent with the minimum-noise bound Tr(A_N) < 0."""
    A_N = 0.5 * (gen.A + gen.A.T)
    trace_AN = float(np.trace(A_N))
    has_non_orthogonal = float(np.linalg.norm(A_N)) > config.TOL_CLASS
    inconsistent = check_generator_cp(gen, tol).is_cp and has_non_orthogonal and trace_AN >= 0
    return trace_AN, not inconsistent


def minimum_noise_report(gen: GeneratorPair, tol: float | None = None) -> dict[str, object]:
    """CP non-orthogonal dynamics carries single-mode active noise and Tr(A_N) < 0."""
    verdict = check_generator_cp(gen, tol)
    report = partition(gen)
    A_N = 0.5 * (gen.A + gen.A.T)
    has_non_orthogonal = (
        float(np.linalg.norm(A_N)) > config.TOL_CLASS or float(np.linalg.norm(gen.C)) > config.TOL_CLASS
    )
    trace_AN = float(np.trace(A_N))
    noise_norm = report.norms["A_NA^S"]
    holds = (not verdict.is_cp) or (not has_non_orthogonal) or (trace_AN < 0 and noise_norm > 0)
    return {
        "cp": verdict.is_cp,
        "has_non_orthogonal": has_non_orthogonal,
        "trace_AN": trace_AN,
        "norm_A_NA_S": noise_norm,
        "theorem_holds": holds,
    }


def single_mode_cp_bound(a_na: float, a_np_x: float, a_np_z: float, c_na: float, tol: float | None = None) -> bool:
    """Scalar form of the N = 1 condition a_na >= sqrt(a_np_x² + a_np_z² + c_na²/4)."""
    radius = float(np.sqrt(a_np_x**2 + a_np_z**2 + c_na**2 / 4))
    # certificate eigenvalues are 2(a_na ± radius)
    return 2 * (a_na - radius) >= -config.cp_tol(tol)


def differential_channel(gen: GeneratorPair, dt: float) -> GaussianChannel:
    return GaussianChannel(np.eye(gen.dim) + gen.A * dt, gen.C * dt)


def dilate(O_joint, gamma_B) -> GaussianChannel:
    """
    Channel on the system from a joint orthogonal map and an uncorrelated environment.

    The system occupies the first 2N coordinates of O_joint; the environment
    modes of Γ_B fill the rest.
    """
    O = require_even(O_joint, "O_joint")
    gamma_B = validate_state(gamma_B, "gamma_B")
    env_dim = gamma_B.shape[0]
    if env_dim >= O.shape[0]:
        raise DimensionMismatch(f"environment dimension {env_dim} leaves no system inside O_joint {O.shape}")
    residual = orthogonality_residual(O)
    if residual > config.TOL_RECON:
        raise NonOrthogonalJoint(f"O_joint deviates from orthogonality by {residual:.3e}")
    physical, violation = is_physical(gamma_B)
    if not physical:
        raise UnphysicalEnvironment(f"environment state violates iΓ <= 1 by {violation:.3e}")
    sys_dim = O.shape[0] - env_dim
    O_A = O[:sys_dim, :sys_dim]
    O_AB = O[:sys_dim, sys_dim:]
    R = O_AB @ gamma_B @ O_AB.T
    return GaussianChannel(O_A, 0.5 * (R - R.T))
