from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermions.errors import DimensionMismatch, NonHermitianInput, NotAntisymmetric, OddDimension, SingularLyapunov
from fermions.matrix_kernel import (
    eig_hermitian,
    expm,
    is_antisymmetric,
    lyapunov_gap,
    lyapunov_solve,
    orthogonality_residual,
    require_antisymmetric,
    require_even,
    sort_eigenvalues,
)
from fermions.phase_space import OMEGA
from fermions.sampling import random_antisymmetric
from strategies import antisymmetric_matrices


def _hurwitz(rng: np.random.Generator, dim: int) -> np.ndarray:
    B = rng.standard_normal((dim, dim))
    shift = np.max(np.linalg.eigvals(B).real) + 1.0
    return B - shift * np.eye(dim)


def test_eig_hermitian_identity():
    values, vectors = eig_hermitian(np.eye(2))
    np.testing.assert_allclose(values, [1.0, 1.0])
    np.testing.assert_allclose(vectors @ vectors.conj().T, np.eye(2), atol=1e-14)


def test_eig_hermitian_of_i_omega():
    values, _ = eig_hermitian(1j * OMEGA)
    np.testing.assert_allclose(values, [-1.0, 1.0], atol=1e-14)


def test_eig_hermitian_real_input_gives_real_eigenvalues():
    values, _ = eig_hermitian(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.isrealobj(values)
    np.testing.assert_allclose(values, [1.0, 3.0])


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_structural_tolerance_is_relative_to_scale():
    with pytest.raises(NonHermitianInput):
        eig_hermitian(np.array([[0.0, 1e-6], [1e-6 + 1e-14, 0.0]]))
    with pytest.raises(NotAntisymmetric):
        require_antisymmetric(np.array([[0.0, 1e-6], [-1e-6 + 1e-14, 0.0]]))
    assert is_antisymmetric(np.zeros((2, 2)))
    assert is_antisymmetric(1e-9 * OMEGA)


def test_eig_hermitian_reconstructs(rng):
    for _ in range(10):
        B = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        H = B + B.conj().T
        values, V = eig_hermitian(H)
        assert np.all(np.diff(values) >= 0)
        np.testing.assert_allclose(V.conj().T @ V, np.eye(6), atol=1e-12)
        residual = np.max(np.abs(V @ np.diag(values) @ V.conj().T - H))
        assert residual <= 1e-10 * max(1.0, np.max(np.abs(H)))


def test_expm_quarter_turn_of_omega():
    np.testing.assert_allclose(expm(OMEGA, np.pi / 2), OMEGA, atol=1e-14)


def test_expm_at_zero_time_is_identity():
    np.testing.assert_allclose(expm(random_antisymmetric(np.random.default_rng(1), 4), 0.0), np.eye(4))


def test_expm_matches_eigendecomposition(rng):
    K = random_antisymmetric(rng, 4)
    values, V = np.linalg.eigh(1j * K)
    t = 0.7
    expected = (V @ np.diag(np.exp(-1j * values * t)) @ V.conj().T).real
    R = expm(K, t)
    np.testing.assert_allclose(R, expected, atol=1e-12)
    assert orthogonality_residual(R) <= 1e-12
    assert abs(np.linalg.det(R) - 1.0) <= 1e-8


@settings(max_examples=40, deadline=None)
@given(antisymmetric_matrices(), st.floats(min_value=-2.0, max_value=2.0))
def test_expm_of_antisymmetric_is_orthogonal(K, t):
    R = expm(K, t)
    assert orthogonality_residual(R) <= 1e-10
    np.testing.assert_allclose(R @ expm(K, -t), np.eye(K.shape[0]), atol=1e-9)


def test_lyapunov_example():
    S = lyapunov_solve(-np.eye(2), OMEGA)
    np.testing.assert_allclose(S, 0.5 * OMEGA, atol=1e-14)


def test_lyapunov_with_zero_constant_term(rng):
    A = _hurwitz(rng, 4)
    np.testing.assert_allclose(lyapunov_solve(A, np.zeros((4, 4))), 0.0, atol=1e-14)


def test_lyapunov_matches_vectorized_oracle(rng):
    for _ in range(5):
        A = _hurwitz(rng, 4)
        C = random_antisymmetric(rng, 4)
        S = lyapunov_solve(A, C)
        assert is_antisymmetric(S, 1e-12)
        scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(S))
        assert np.max(np.abs(A @ S + S @ A.T + C)) <= 1e-10 * scale
        I = np.eye(4)
        K = np.kron(I, A) + np.kron(A, I)
        oracle = np.linalg.solve(K, -C.flatten(order="F")).reshape((4, 4), order="F")
        np.testing.assert_allclose(S, oracle, rtol=1e-8, atol=1e-10 * scale)


def test_lyapunov_singular_for_rotation_generator():
    assert lyapunov_gap(OMEGA) <= 1e-12
    with pytest.raises(SingularLyapunov):
        lyapunov_solve(OMEGA, np.zeros((2, 2)))


def test_lyapunov_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        lyapunov_solve(-np.eye(2), np.zeros((4, 4)))


def test_require_even_rejects_odd_dimension():
    with pytest.raises(OddDimension):
        require_even(np.zeros((3, 3)))


def test_require_antisymmetric_names_offending_pair():
    C = np.zeros((4, 4))
    C[0, 2] = 0.5
    C[2, 0] = 0.1
    with pytest.raises(NotAntisymmetric) as info:
        require_antisymmetric(C, "C")
    assert info.value.pair == (0, 2)
    assert "(1,3)" in str(info.value)


def test_sort_eigenvalues_orders_real_then_imaginary():
    values = np.array([1 + 0j, -1 + 2j, -1 - 2j, 0j])
    np.testing.assert_array_equal(sort_eigenvalues(values), [-1 - 2j, -1 + 2j, 0j, 1 + 0j])
