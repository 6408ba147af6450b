#!/usr/bin/env python3
"""Random draws of states, orthogonal maps, channels and CP generators."""
from __future__ import annotations

import numpy as np

from fermions.cp_analysis import GaussianChannel, dilate
from fermions.generators import GeneratorPair
from fermions.lindblad_bridge import LindbladData, rebuild_generator
from fermions.matrix_kernel import antisymmetrize, eig_hermitian, expm
from fermions.phase_space import OMEGA


def random_antisymmetric(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    return antisymmetrize(scale * rng.standard_normal((dim, dim)))


def random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    """A special orthogonal matrix, e^K for random antisymmetric K."""
    return expm(random_antisymmetric(rng, dim, scale=2.0))


def random_physical_state(rng: np.random.Generator, N: int, pure: bool = False) -> np.ndarray:
    nus = rng.choice([-1.0, 1.0], size=N) if pure else rng.uniform(-1.0, 1.0, size=N)
    O = random_orthogonal(rng, 2 * N)
    return antisymmetrize(O @ np.kron(np.diag(nus), OMEGA) @ O.T)


def random_generator(rng: np.random.Generator, N: int, scale: float = 1.0) -> GeneratorPair:
    dim = 2 * N
    return GeneratorPair(scale * rng.standard_normal((dim, dim)), random_antisymmetric(rng, dim, scale))


def random_lindblad(rng: np.random.Generator, N: int, rank: int | None = None) -> LindbladData:
    """Lindblad data with a random PSD dissipation matrix of the given rank."""
    dim = 2 * N
    rank = int(rng.integers(1, dim + 1)) if rank is None else rank
    B = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    values, vectors = eig_hermitian(B @ B.conj().T / dim)
    keep = values > 1e-12
    return LindbladData(
        H_eff=random_antisymmetric(rng, dim),
        rates=values[keep],
        vectors=vectors[:, keep],
    )


def random_cp_generator(rng: np.random.Generator, N: int, rank: int | None = None) -> GeneratorPair:
    return rebuild_generator(random_lindblad(rng, N, rank))


def random_cp_channel(rng: np.random.Generator, N: int, M: int) -> GaussianChannel:
    """A channel obtained by dilation with M environment modes."""
    return dilate(random_orthogonal(rng, 2 * (N + M)), random_physical_state(rng, M))


def random_single_mode_parameters(rng: np.random.Generator) -> dict[str, float]:
    return {
        "a_op": float(rng.normal()),
        "a_na": float(rng.uniform(0.0, 2.0)),
        "a_np_x": float(rng.normal()),
        "a_np_z": float(rng.normal()),
        "c_na": float(rng.normal(scale=2.0)),
    }
