#!/usr/bin/env python3
"""
JSON/CSV readers and writers for states, generators, channels and trajectories.

Matrices are row-major nested lists in interleaved (x1, p1, x2, p2, ...)
ordering. Floats are written at 12 significant digits and every output goes
through a temp file in the target directory followed by an atomic rename.
"""
from __future__ import annotations

import csv
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from fermions.cp_analysis import CpVerdict, GaussianChannel
from fermions.errors import FormatError
from fermions.generators import GeneratorPair
from fermions.lindblad_bridge import LindbladData
from fermions.phase_space import validate_state

SIG_DIGITS = 12


def rounded(value: Any) -> Any:
    """Recursively round floats (and numpy scalars/arrays) to SIG_DIGITS significant digits."""
    if isinstance(value, np.ndarray):
        return rounded(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.{SIG_DIGITS}g}")
    if isinstance(value, dict):
        return {str(k): rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [rounded(v) for v in value]
    return value


def _atomic_write(path: Path, writer) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            writer(f)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return path


def write_json_atomic(path: Path, payload: Any) -> Path:
    def _dump(f):
        json.dump(rounded(payload), f, indent=2, ensure_ascii=False)
        f.write("\n")

    return _atomic_write(path, _dump)


def write_text_atomic(path: Path, text: str) -> Path:
    return _atomic_write(path, lambda f: f.write(text))


def write_csv_atomic(path: Path, header: list[str], rows: list[list[str]]) -> Path:
    def _dump(f):
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

    return _atomic_write(path, _dump)


def dumps_json(payload: Any) -> str:
    return json.dumps(rounded(payload), indent=2, ensure_ascii=False)


def read_json(path: Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise FormatError(f"{path}: file not found") from e
    except (OSError, json.JSONDecodeError) as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from e


def _require(data: Any, key: str, where: str) -> Any:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected a JSON object, got {type(data).__name__}")
    if key not in data:
        raise FormatError(f"{where}: missing key {key!r}")
    return data[key]


def _matrix(data: Any, key: str, dim: int | None, where: str) -> np.ndarray:
    raw = _require(data, key, where)
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise FormatError(f"{where}: {key!r} is not a numeric matrix") from e
    if arr.ndim != 2 or (dim is not None and arr.shape != (dim, dim)):
        expected = f"{dim}x{dim}" if dim is not None else "2-D"
        raise FormatError(f"{where}: {key!r} has shape {arr.shape}, expected {expected}")
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{where}: {key!r} has non-finite entries")
    return arr


def _mode_count(data: Any, where: str) -> int:
    N = _require(data, "N", where)
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise FormatError(f"{where}: 'N' must be a positive integer, got {N!r}")
    return N


def state_to_json(gamma) -> dict[str, Any]:
    gamma = np.asarray(gamma, dtype=float)
    return {"N": gamma.shape[0] // 2, "gamma": gamma.tolist()}


def state_from_json(data: Any, where: str = "state") -> np.ndarray:
    N = _mode_count(data, where)
    return validate_state(_matrix(data, "gamma", 2 * N, where), "gamma")


def generator_to_json(gen: GeneratorPair) -> dict[str, Any]:
    payload: dict[str, Any] = {"N": gen.N, "A": gen.A.tolist(), "C": gen.C.tolist()}
    if gen.name:
        payload["name"] = gen.name
    return payload


def generator_from_json(data: Any, where: str = "generator") -> GeneratorPair:
    N = _mode_count(data, where)
    name = data.get("name", "")
    return GeneratorPair(_matrix(data, "A", 2 * N, where), _matrix(data, "C", 2 * N, where), str(name))


def channel_to_json(ch: GaussianChannel) -> dict[str, Any]:
    return {"N": ch.N, "O_A": ch.O_A.tolist(), "R": ch.R.tolist()}


def channel_from_json(data: Any, where: str = "channel") -> GaussianChannel:
    N = _mode_count(data, where)
    return GaussianChannel(_matrix(data, "O_A", 2 * N, where), _matrix(data, "R", 2 * N, where))


def lindblad_to_json(ld: LindbladData) -> dict[str, Any]:
    return {
        "H_eff": ld.H_eff.tolist(),
        "channels": [
            {"gamma": float(rate), "ell_re": ell.real.tolist(), "ell_im": ell.imag.tolist()}
            for rate, ell in ld.channels
        ],
    }


def lindblad_from_json(data: Any, where: str = "lindblad") -> LindbladData:
    H = _matrix(data, "H_eff", None, where)
    channels = _require(data, "channels", where)
    if not isinstance(channels, list):
        raise FormatError(f"{where}: 'channels' must be a list")
    rates, vectors = [], []
    for k, ch in enumerate(channels):
        label = f"{where}: channel {k}"
        try:
            rate = float(_require(ch, "gamma", label))
            ell = np.array(_require(ch, "ell_re", label), dtype=float) + 1j * np.array(
                _require(ch, "ell_im", label), dtype=float
            )
        except (TypeError, ValueError) as e:
            raise FormatError(f"{label}: non-numeric entries") from e
        if ell.shape != (H.shape[0],):
            raise FormatError(f"{label}: vector length {ell.shape} does not match H_eff {H.shape}")
        rates.append(rate)
        vectors.append(ell)
    stacked = np.column_stack(vectors) if vectors else np.zeros((H.shape[0], 0), dtype=complex)
    return LindbladData(H_eff=H, rates=np.array(rates), vectors=stacked)


def verdict_to_json(verdict: CpVerdict, noise_deficit: float | None = None, trace_AN: float | None = None) -> dict[str, Any]:
    payload: dict[str, Any] = {"is_cp": verdict.is_cp, "min_eig": verdict.min_eigenvalue}
    if noise_deficit is not None:
        payload["noise_deficit"] = noise_deficit
    if trace_AN is not None:
        payload["trace_AN"] = trace_AN
    return payload


def load_state(path: Path) -> np.ndarray:
    return state_from_json(read_json(path), str(path))


def load_generator(path: Path) -> GeneratorPair:
    return generator_from_json(read_json(path), str(path))


def load_channel(path: Path) -> GaussianChannel:
    return channel_from_json(read_json(path), str(path))


def load_generator_or_channel(path: Path) -> GeneratorPair | GaussianChannel:
    data = read_json(path)
    if isinstance(data, dict) and "O_A" in data:
        return channel_from_json(data, str(path))
    return generator_from_json(data, str(path))
