from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from fermions.cp_analysis import check_generator_cp
from fermions.dynamics import evolve_master
from fermions.errors import CatalogMismatch, ConfigError
from fermions.generators import CLASS_NAMES, classify
from lab.catalog import DEFAULT_PARAMS, ENTRIES, catalog, entry_summary, merge_params, verify_entry
from lab.two_mode import g_to_gamma, gamma_to_g, in_row_span, spectral_report

G0 = np.array([0.3, -0.2, 0.4, 0.1, -0.1, 0.3])


def _entry(name: str, variant: str = ""):
    return next(e for e in ENTRIES if e.name == name and e.variant == variant)


def _random_params(rng: np.random.Generator) -> dict[str, float]:
    r = rng.uniform(0.5, 2.0)
    return merge_params(
        {
            "r": r,
            "b": rng.uniform(-r, r),
            "c": rng.uniform(-r, r),
            "E1": rng.uniform(0.5, 2.0),
            "E2": rng.uniform(0.1, 0.4),
        }
    )


def test_catalog_covers_every_realizable_class():
    entries = catalog()
    assert {e.key for e in entries} == set(CLASS_NAMES)
    assert len(entries) == 10


def test_entries_land_in_their_class():
    for entry in ENTRIES:
        assert entry.key in classify(entry.build(DEFAULT_PARAMS)).present, entry.label


def test_default_generators_are_completely_positive():
    for entry in ENTRIES:
        assert check_generator_cp(entry.build(DEFAULT_PARAMS)).is_cp, entry.label


def test_predictions_hold_for_random_parameters(rng):
    for _ in range(5):
        params = _random_params(rng)
        for entry in ENTRIES:
            verify_entry(entry, params)


def test_verify_entry_detects_a_wrong_prediction():
    entry = _entry("Noise")
    wrong = replace(entry, modes=lambda p: [(v, mu - 0.1) for v, mu in entry.modes(p)])
    with pytest.raises(CatalogMismatch):
        verify_entry(wrong, merge_params())


def test_active_shielding_extremal_point():
    entry = _entry("Multi-mode Active Corr. Shielding", "b_w")
    params = entry.extremal_params(merge_params())
    assert params["b_w"] == -params["r"]
    report = spectral_report(entry.system(params))
    assert in_row_span(report.conserved, [1, 1, 1, 0, 0, 1])


def test_passive_shielding_preserved_sum_depends_on_sign():
    entry = _entry("Multi-mode Passive Corr. Shielding", "b_x")
    params = entry.extremal_params(merge_params())
    assert params["b_x"] == params["r"]
    report = spectral_report(entry.system(params))
    assert in_row_span(report.conserved, [1, -1, 1, 0, 0, -1])

    flipped = {**params, "b_x": -params["r"]}
    report = spectral_report(entry.system(flipped))
    assert in_row_span(report.conserved, [1, -1, -1, 0, 0, 1])
    assert not in_row_span(report.conserved, [1, -1, 1, 0, 0, -1])


def test_correlation_shielding_boundary_stops_decay():
    entry = _entry("Correlation Shielding", "b_z")
    params = entry.extremal_params(merge_params())
    report = spectral_report(entry.system(params))
    assert in_row_span(report.conserved, [0, 0, 1, 0, 0, 0])
    assert in_row_span(report.conserved, [0, 0, 0, 1, 0, 0])


def test_conserved_combinations_are_constant_along_trajectories():
    times = np.linspace(0.0, 3.0, 7)
    gamma0 = g_to_gamma(G0)
    for entry in ENTRIES:
        params = entry.extremal_params(merge_params()) or merge_params()
        gen = entry.build(params)
        conserved = spectral_report(entry.system(params)).conserved
        traj = evolve_master(gen, gamma0, times)
        for v in conserved:
            values = [float(v @ gamma_to_g(g)) for g in traj.states]
            assert np.ptp(values) <= 1e-8, entry.label


@pytest.mark.slow
@pytest.mark.parametrize("name", ["Multi-mode Active Corr. Shielding", "Multi-mode Passive Corr. Shielding"])
def test_predicted_limit_matches_evolution(name):
    entry = next(e for e in ENTRIES if e.name == name)
    params = entry.extremal_params(merge_params())
    gamma0 = g_to_gamma(G0)
    late = evolve_master(entry.build(params), gamma0, [50.0 / params["r"]]).final
    np.testing.assert_allclose(late, entry.predicted_limit(gamma0), atol=1e-8)


def test_predicted_limit_requires_a_closed_form():
    with pytest.raises(CatalogMismatch):
        _entry("Noise").predicted_limit(g_to_gamma(G0))


def test_merge_params():
    assert merge_params() == DEFAULT_PARAMS
    assert merge_params({"b_w": 1.0})["b_w"] == 1.0
    with pytest.raises(ConfigError):
        merge_params({"bogus": 1.0})


def test_entry_summary_reports_rotation_frequency():
    entry = _entry("Multi-mode Rotation", "b_w")
    summary = entry_summary(entry, merge_params())
    assert summary["is_cp"]
    assert summary["max_error"] <= 1e-10
    assert [osc["frequency"] for osc in summary["oscillating"]] == [pytest.approx(2 * DEFAULT_PARAMS["b"])]
    assert len(summary["conserved"]) == 4


def test_entry_summary_names_the_extremal_point():
    entry = _entry("Multi-mode Active Corr. Shielding", "b_w")
    summary = entry_summary(entry, merge_params())
    assert summary["extremal"] == {"b_w": -1.0}
    assert summary["shielded"] == ["nu1+nu2+g1+g4"]
