from __future__ import annotations

import numpy as np
import pytest

from fermions import generators as gens
from fermions.cp_analysis import check_generator_cp
from fermions.errors import DimensionMismatch, NotCompletelyPositive
from fermions.generators import GeneratorPair
from fermions.lindblad_bridge import (
    LindbladData,
    dissipation_matrix,
    effective_hamiltonian_operator,
    extract_lindblad,
    format_terms,
    majorana_label,
    rebuild_generator,
    render_lindblad_operator,
    spectral_projectors,
)
from fermions.phase_space import OMEGA
from fermions.sampling import random_cp_generator, random_generator
from lab.catalog import DEFAULT_PARAMS, ENTRIES


def _assert_same_generator(a: GeneratorPair, b: GeneratorPair, tol: float = 1e-10) -> None:
    np.testing.assert_allclose(a.A, b.A, atol=tol)
    np.testing.assert_allclose(a.C, b.C, atol=tol)


def test_noise_rates_and_span():
    r = 0.7
    ld = extract_lindblad(gens.noise(r))
    np.testing.assert_allclose(ld.rates, [2 * r, 2 * r], atol=1e-12)
    projectors = spectral_projectors(ld)
    assert len(projectors) == 1
    rate, P = projectors[0]
    assert rate == pytest.approx(2 * r)
    np.testing.assert_allclose(P, np.eye(2), atol=1e-12)


def test_purifying_rates():
    r, c = 1.0, 0.5
    ld = extract_lindblad(gens.purifying(r, c))
    np.testing.assert_allclose(ld.rates, [2 * r - c, 2 * r + c], atol=1e-12)


def test_purifying_channels_are_ladder_operators():
    ld = extract_lindblad(gens.purifying(1.0, 0.5))
    rendered = [render_lindblad_operator(rate, ell)["ladder"] for rate, ell in ld.channels]
    assert [label for _, label in rendered[0]] == ["a_1^+"]
    assert [label for _, label in rendered[1]] == ["a_1"]
    assert abs(rendered[0][0][0]) == pytest.approx(np.sqrt(1.5))
    assert abs(rendered[1][0][0]) == pytest.approx(np.sqrt(2.5))


def test_orthogonal_generator_has_no_channels():
    A = gens.free_evolution(1.0, 0.7).A
    ld = extract_lindblad(GeneratorPair(A, np.zeros((4, 4))))
    assert ld.channels == []
    np.testing.assert_allclose(ld.H_eff, A)


def test_not_completely_positive_raises():
    with pytest.raises(NotCompletelyPositive):
        extract_lindblad(GeneratorPair(np.zeros((2, 2)), OMEGA))


def test_single_channel_rebuilds_expected_generator():
    ell = np.array([1.0, 1j]) / np.sqrt(2)
    ld = LindbladData(H_eff=np.zeros((2, 2)), rates=[2.0], vectors=ell.reshape(2, 1))
    gen = rebuild_generator(ld)
    np.testing.assert_allclose(gen.A, -0.5 * np.eye(2), atol=1e-14)
    np.testing.assert_allclose(gen.C, OMEGA, atol=1e-14)


def test_round_trip_for_canonical_generators():
    for gen in (gens.noise(0.4, n_modes=2), gens.active_shielding(1.0, 0.3)):
        _assert_same_generator(rebuild_generator(extract_lindblad(gen)), gen)
    for entry in ENTRIES:
        gen = entry.build(DEFAULT_PARAMS)
        _assert_same_generator(rebuild_generator(extract_lindblad(gen)), gen)


def test_round_trip_for_random_cp_generators(rng):
    for k in range(200):
        gen = random_cp_generator(rng, 1 + k % 3)
        ld = extract_lindblad(gen)
        assert np.all(ld.rates > 0)
        np.testing.assert_allclose(ld.vectors.conj().T @ ld.vectors, np.eye(ld.rates.size), atol=1e-10)
        np.testing.assert_allclose(ld.dissipator_matrix(), dissipation_matrix(gen), atol=1e-10)
        _assert_same_generator(rebuild_generator(ld), gen)


def test_cp_verdict_matches_rate_signs(rng):
    for k in range(500):
        N = 1 + k % 3
        gen = random_generator(rng, N) if k % 2 else random_cp_generator(rng, N)
        rates = np.linalg.eigvalsh(dissipation_matrix(gen))
        cp = check_generator_cp(gen).is_cp
        assert cp == bool(rates[0] >= -1e-10)
        if not cp:
            with pytest.raises(NotCompletelyPositive):
                extract_lindblad(gen)


def test_lindblad_data_validates_shapes():
    with pytest.raises(DimensionMismatch):
        LindbladData(H_eff=np.zeros((2, 2)), rates=[1.0], vectors=np.ones((4, 1)))
    with pytest.raises(DimensionMismatch):
        LindbladData(H_eff=np.zeros((2, 2)), rates=[1.0, 2.0], vectors=np.ones((2, 1)))


def test_effective_hamiltonian_of_free_evolution():
    E = 1.3
    terms = effective_hamiltonian_operator(-E * OMEGA)
    assert terms == [(pytest.approx(E), "n_1"), (pytest.approx(-E / 2), "1")]


def test_effective_hamiltonian_of_rotation():
    b = 0.5
    terms = effective_hamiltonian_operator(gens.multimode_rotation(b).A)
    assert terms == [(pytest.approx(b), "a_1 a_2^+"), (pytest.approx(-b), "a_1^+ a_2")]


def test_render_noise_channel():
    r = 0.5
    rendered = render_lindblad_operator(2 * r, np.array([1.0, 0.0]))
    assert rendered["majorana"] == [(pytest.approx(np.sqrt(2 * r)), "x_1")]
    assert rendered["ladder"] == [(pytest.approx(np.sqrt(r)), "a_1"), (pytest.approx(np.sqrt(r)), "a_1^+")]


def test_majorana_labels_and_formatting():
    assert [majorana_label(k) for k in range(4)] == ["x_1", "p_1", "x_2", "p_2"]
    assert format_terms([]) == "0"
    assert format_terms([(1.5, "n_1"), (-0.75, "1")]) == "1.5 n_1 + -0.75"
