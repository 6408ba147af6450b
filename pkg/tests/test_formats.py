from __future__ import annotations

import json

import numpy as np
import pytest

from fermions import generators as gens
from fermions.cp_analysis import GaussianChannel, check_generator_cp
from fermions.errors import FormatError, NotAntisymmetric, OddDimension
from fermions.lindblad_bridge import extract_lindblad, spectral_projectors
from fermions.phase_space import OMEGA, make_thermal
from utils.formats import (
    channel_to_json,
    generator_to_json,
    lindblad_from_json,
    lindblad_to_json,
    load_channel,
    load_generator,
    load_generator_or_channel,
    load_state,
    read_json,
    rounded,
    state_to_json,
    verdict_to_json,
    write_csv_atomic,
    write_json_atomic,
)


def _write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_rounded_keeps_twelve_significant_digits():
    assert rounded(0.123456789012345) == 0.123456789012
    assert rounded({"a": [np.float64(1 / 3), np.int64(2), np.bool_(True)]}) == {"a": [0.333333333333, 2, True]}
    assert rounded(np.array([[1.0, 2.0]])) == [[1.0, 2.0]]


def test_state_file_round_trip(tmp_path):
    gamma = make_thermal(2, [0.2, -0.6])
    path = write_json_atomic(tmp_path / "state.json", state_to_json(gamma))
    np.testing.assert_allclose(load_state(path), gamma)
    assert [p.name for p in tmp_path.iterdir()] == ["state.json"]


def test_generator_file_round_trip(tmp_path):
    gen = gens.purifying(1.0, 0.5)
    path = write_json_atomic(tmp_path / "out" / "gen.json", generator_to_json(gen))
    loaded = load_generator(path)
    np.testing.assert_allclose(loaded.A, gen.A)
    np.testing.assert_allclose(loaded.C, gen.C)
    assert loaded.name == "Purifying"


def test_channel_file_round_trip(tmp_path):
    ch = GaussianChannel(0.5 * np.eye(2), 0.25 * OMEGA)
    path = write_json_atomic(tmp_path / "ch.json", channel_to_json(ch))
    loaded = load_channel(path)
    np.testing.assert_allclose(loaded.O_A, ch.O_A)
    assert isinstance(load_generator_or_channel(path), GaussianChannel)


def test_lindblad_json_preserves_projectors():
    ld = extract_lindblad(gens.noise(0.5, n_modes=2))
    restored = lindblad_from_json(json.loads(json.dumps(rounded(lindblad_to_json(ld)))))
    np.testing.assert_allclose(restored.rates, ld.rates, atol=1e-11)
    for (r1, P1), (r2, P2) in zip(spectral_projectors(ld), spectral_projectors(restored)):
        assert r1 == pytest.approx(r2)
        np.testing.assert_allclose(P1, P2, atol=1e-10)


def test_lindblad_json_without_channels():
    restored = lindblad_from_json({"H_eff": [[0.0, 1.0], [-1.0, 0.0]], "channels": []})
    assert restored.channels == []


def test_non_antisymmetric_constant_term_names_entries(tmp_path):
    path = _write(tmp_path / "bad.json", {"N": 1, "A": [[0, 0], [0, 0]], "C": [[0, 1], [0.5, 0]]})
    with pytest.raises(NotAntisymmetric) as info:
        load_generator(path)
    assert "(1,2)" in str(info.value)
    assert info.value.exit_code == 3


@pytest.mark.parametrize(
    "payload",
    [
        {"A": [[0, 0], [0, 0]], "C": [[0, 0], [0, 0]]},
        {"N": 0, "A": [], "C": []},
        {"N": True, "A": [[0, 0], [0, 0]], "C": [[0, 0], [0, 0]]},
        {"N": 1, "A": [[0, 0, 0], [0, 0, 0]], "C": [[0, 0], [0, 0]]},
        {"N": 1, "A": [["x", 0], [0, 0]], "C": [[0, 0], [0, 0]]},
        {"N": 1, "C": [[0, 0], [0, 0]]},
        [1, 2, 3],
    ],
)
def test_malformed_generators(tmp_path, payload):
    path = _write(tmp_path / "gen.json", payload)
    with pytest.raises(FormatError) as info:
        load_generator(path)
    assert info.value.exit_code == 2


def test_unreadable_files(tmp_path):
    with pytest.raises(FormatError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError):
        read_json(bad)


def test_state_validation(tmp_path):
    path = _write(tmp_path / "state.json", {"N": 1, "gamma": [[0, 1], [1, 0]]})
    with pytest.raises(NotAntisymmetric):
        load_state(path)


def test_odd_dimension_from_wrong_mode_count(tmp_path):
    with pytest.raises(OddDimension):
        GaussianChannel(np.eye(3), np.zeros((3, 3)))


def test_csv_writer(tmp_path):
    path = write_csv_atomic(tmp_path / "traj.csv", ["t", "nu_1"], [["0", "1"], ["1", "0.5"]])
    assert path.read_text(encoding="utf-8") == "t,nu_1\n0,1\n1,0.5\n"


def test_verdict_payload():
    verdict = check_generator_cp(gens.noise(1.0))
    payload = verdict_to_json(verdict, noise_deficit=0.0, trace_AN=-2.0)
    assert payload == {"is_cp": True, "min_eig": pytest.approx(2.0), "noise_deficit": 0.0, "trace_AN": -2.0}
    assert set(verdict_to_json(verdict)) == {"is_cp", "min_eig"}
