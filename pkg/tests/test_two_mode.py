from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from fermions import generators as gens
from fermions.errors import DomainError, WrongModeCount
from fermions.generators import GeneratorPair
from fermions.phase_space import OMEGA
from fermions.sampling import random_generator, random_physical_state
from lab.two_mode import (
    build_g_system,
    build_linear_system,
    combination_label,
    from_g_vector,
    g_labels,
    g_to_gamma,
    g_vector,
    gamma_to_g,
    in_row_span,
    long_time_limit,
    match_spectra,
    spectral_report,
)
from strategies import antisymmetric_matrices

G0 = np.array([0.3, -0.2, 0.4, 0.1, -0.1, 0.3])


def test_gamma_to_g_layout():
    gamma = g_to_gamma(G0)
    assert gamma[0, 1] == 0.3 and gamma[2, 3] == -0.2
    assert gamma[0, 2] == 0.4 and gamma[0, 3] == 0.1
    assert gamma[1, 2] == -0.1 and gamma[1, 3] == 0.3
    np.testing.assert_array_equal(gamma_to_g(gamma), G0)


@settings(max_examples=50, deadline=None)
@given(antisymmetric_matrices(dim=4))
def test_g_vector_round_trip(gamma):
    np.testing.assert_allclose(g_to_gamma(gamma_to_g(gamma)), gamma, atol=0)


def test_wrong_mode_count():
    with pytest.raises(WrongModeCount):
        gamma_to_g(OMEGA)
    with pytest.raises(WrongModeCount):
        g_to_gamma([0.1, 0.2])
    with pytest.raises(WrongModeCount):
        build_g_system(gens.noise(1.0))


def test_general_layout_sizes():
    assert len(g_labels(3)) == 15
    assert g_labels(3)[:3] == ("nu1", "nu2", "nu3")
    with pytest.raises(DomainError):
        from_g_vector(np.zeros(5), 2)


def test_free_evolution_system():
    E1, E2 = 1.0, 0.7
    sys = build_g_system(gens.free_evolution(E1, E2))
    expected = np.array([
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, -E2, -E1, 0],
        [0, 0, E2, 0, 0, -E1],
        [0, 0, E1, 0, 0, -E2],
        [0, 0, 0, E1, E2, 0],
    ])
    np.testing.assert_allclose(sys.a_matrix, expected, atol=1e-15)
    np.testing.assert_array_equal(sys.c_vector, 0.0)


def test_noise_on_first_mode_system():
    r = 0.6
    sys = build_g_system(gens.noise(r, n_modes=2))
    np.testing.assert_allclose(sys.a_matrix, np.diag([-2 * r, 0, -r, -r, -r, -r]), atol=1e-15)


def test_correlating_system():
    r, c = 1.0, (0.5, 0.25, -0.25, 0.5)
    sys = build_g_system(gens.correlating(r, *c))
    np.testing.assert_allclose(sys.a_matrix, -2 * r * np.eye(6), atol=1e-15)
    np.testing.assert_allclose(sys.c_vector, [0, 0, *c])


def test_linear_system_matches_master_equation(rng):
    for k in range(100):
        N = 2 if k % 2 else 3
        gen = random_generator(rng, N)
        gamma = random_physical_state(rng, N)
        sys = build_linear_system(gen)
        assert sys.N == N
        direct = g_vector(gen.A @ gamma + gamma @ gen.A.T + gen.C)
        np.testing.assert_allclose(sys.rhs(g_vector(gamma)), direct, atol=1e-12)


def test_free_evolution_spectrum():
    E1, E2 = 1.0, 0.7
    report = spectral_report(build_g_system(gens.free_evolution(E1, E2)))
    slow, fast = -((E1 - E2) ** 2), -((E1 + E2) ** 2)
    ok, _ = match_spectra(report.squared_eigenvalues, [0, 0, slow, slow, fast, fast])
    assert ok
    assert in_row_span(report.conserved, [1, 0, 0, 0, 0, 0])
    assert in_row_span(report.conserved, [0, 1, 0, 0, 0, 0])


def test_rotation_oscillates_at_twice_the_coupling():
    b = 0.5
    report = spectral_report(build_g_system(gens.multimode_rotation(b)))
    assert in_row_span(report.conserved, [1, 1, 0, 0, 0, 0])
    frequencies = [freq for freq, _ in report.oscillating]
    assert frequencies == [pytest.approx(2 * b)]
    rows = report.oscillating[0][1]
    assert in_row_span(rows, [1, -1, 0, 0, 0, 0])
    assert in_row_span(rows, [0, 0, 1, 0, 0, 1])


def test_match_spectra():
    assert match_spectra([1.0, 2.0], [2.0, 1.0]) == (True, 0.0)
    ok, worst = match_spectra([1.0, 2.0], [1.0, 2.1])
    assert not ok and worst == pytest.approx(0.1)
    assert match_spectra([1.0], [1.0, 2.0]) == (False, float("inf"))


def test_combination_label():
    assert combination_label(np.array([1, -1, 1, 0, 0, -1])) == "nu1-nu2+g1-g4"
    assert combination_label(np.array([-2, 0, -1, 0, 0, 0])) == "nu1+0.5*g1"
    assert combination_label(np.zeros(6)) == "0"


def test_long_time_limits():
    sys = build_g_system(gens.active_shielding(1.0, -1.0))
    np.testing.assert_allclose(long_time_limit(sys, G0), [0.2, 0.2, 0.2, 0, 0, 0.2], atol=1e-10)

    sys = build_g_system(gens.noise(1.0, n_modes=2))
    np.testing.assert_allclose(long_time_limit(sys, G0), [0, -0.2, 0, 0, 0, 0], atol=1e-10)

    r, c = 1.0, 0.5
    sys = build_g_system(gens.purifying(r, c, n_modes=2))
    np.testing.assert_allclose(long_time_limit(sys, G0), [c / (2 * r), -0.2, 0, 0, 0, 0], atol=1e-10)


def test_long_time_limit_rejects_oscillation():
    with pytest.raises(DomainError):
        long_time_limit(build_g_system(gens.free_evolution(1.0, 0.7)), G0)


def test_long_time_limit_rejects_driven_kernel():
    C = np.zeros((4, 4))
    C[2, 3], C[3, 2] = 0.5, -0.5
    gen = GeneratorPair(gens.noise(1.0, n_modes=2).A, C)
    with pytest.raises(DomainError):
        long_time_limit(build_g_system(gen), G0)
