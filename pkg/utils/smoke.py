#!/usr/bin/env python3
"""Lightweight smoke checks: sample inputs, catalog predictions, Lindblad round-trips, oracle."""
from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from fermions.cp_analysis import check_generator_cp
from fermions.errors import FermiGaussError
from fermions.generators import noise
from fermions.lindblad_bridge import extract_lindblad, rebuild_generator
from fermions.phase_space import make_thermal
from lab.catalog import catalog, merge_params, verify_entry
from lab.fock_oracle import cross_validate, passes
from utils import config
from utils.formats import load_generator, load_state

EXPECTED_GENERATOR_FILES = [
    "active_shielding.json",
    "correlating.json",
    "free_evolution.json",
    "noise.json",
    "purifying.json",
    "purifying_too_strong.json",
    "rotation.json",
]

EXPECTED_STATE_FILES = [
    "correlated_2mode.json",
    "ground_1mode.json",
    "mixed_2mode.json",
]


def _check_examples(examples_dir: Path, failures: list[str]) -> int:
    checked = 0
    for filename in EXPECTED_GENERATOR_FILES + EXPECTED_STATE_FILES:
        path = examples_dir / filename
        if not path.exists():
            failures.append(f"{filename}: file missing")
            continue
        loader = load_generator if filename in EXPECTED_GENERATOR_FILES else load_state
        try:
            loader(path)
        except FermiGaussError as e:
            failures.append(f"{filename}: {e}")
            continue
        checked += 1
    return checked


def run_smoke_check(repo_root: Path, *, skip_oracle: bool = False) -> int:
    examples_dir = repo_root / "data" / "examples"
    failures: list[str] = []
    warnings: list[str] = []

    if not examples_dir.exists():
        print(f"[ERROR] Missing directory: {examples_dir}")
        return 1
    checked = _check_examples(examples_dir, failures)

    params = merge_params()
    entries = catalog(params, verify=False)
    for entry in entries:
        try:
            worst = verify_entry(entry, params)
        except FermiGaussError as e:
            failures.append(str(e))
            continue
        if worst > 1e-12:
            warnings.append(f"{entry.label}: prediction error {worst:.2e}")

        gen = entry.build(params)
        if not check_generator_cp(gen).is_cp:
            failures.append(f"{entry.label}: default generator is not completely positive")
            continue
        rebuilt = rebuild_generator(extract_lindblad(gen))
        drift = max(float(np.max(np.abs(rebuilt.A - gen.A))), float(np.max(np.abs(rebuilt.C - gen.C))))
        if drift > config.TOL_RECON:
            failures.append(f"{entry.label}: Lindblad round-trip drifted by {drift:.2e}")

    if not skip_oracle:
        deviation = cross_validate(noise(0.5), make_thermal(1, [1.0]), 2.0)
        if not passes(deviation):
            failures.append(f"oracle: noise cross-check deviation {deviation:.2e}")

    if failures:
        print("[FAIL] Smoke checks failed:")
        for issue in failures:
            print(f"  - {issue}")
        if warnings:
            print("[WARN] Additional warnings:")
            for issue in warnings:
                print(f"  - {issue}")
        return 1

    if warnings:
        print("[OK] Smoke checks passed with warnings.")
        for issue in warnings:
            print(f"[WARN] {issue}")
    else:
        print("[OK] Smoke checks passed.")

    print(f"Checked {checked} example files in {examples_dir} and {len(entries)} catalog entries")
    return 0


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Run lightweight smoke checks.")
    parser.add_argument(
        "--repo-root",
        type=Path,
        default=Path(__file__).resolve().parent.parent,
        help="Repository root path (default: current project root).",
    )
    parser.add_argument(
        "--skip-oracle",
        action="store_true",
        help="Skip the density-matrix cross-check.",
    )
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    return run_smoke_check(args.repo_root.resolve(), skip_oracle=args.skip_oracle)


if __name__ == "__main__":
    raise SystemExit(main())
