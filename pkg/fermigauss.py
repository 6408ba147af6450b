#!/usr/bin/env python3
"""
Single entrypoint for the open fermionic Gaussian dynamics toolkit.

Examples:
  # Partition a generator into its nine classes, with CP verdict and Lindblad form
  python fermigauss.py classify data/examples/purifying.json --format markdown

  # Trajectory CSV from a generator and an initial state
  python fermigauss.py simulate data/examples/noise.json data/examples/ground_1mode.json --t-max 2 --samples 41 --out runs/noise.csv

  # Canonical two-mode catalog with computed spectra
  python fermigauss.py catalog --param b_w=1 --format json

  # Compare phase-space and density-matrix evolution
  python fermigauss.py xcheck data/examples/rotation.json data/examples/correlated_2mode.json --t-max 2

  # Complete-positivity verdict for a generator or a channel
  python fermigauss.py check-cp data/examples/purifying_too_strong.json

Exit codes: 0 ok, 2 unreadable input or bad option, 3 invariant violation,
4 unphysical initial state, 5 cross-check deviation above threshold.
Set FERMIGAUSS_TOL to override the CP/physicality verdict tolerance.
"""
from __future__ import annotations

import argparse
import sys
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fermions.cp_analysis import (
    GaussianChannel,
    check_channel_cp,
    check_generator_cp,
    minimum_noise_report,
    noise_deficit,
    trace_diagnostic,
)
from fermions.dynamics import METHODS, evolve_master, steady_state, trajectory_header, trajectory_rows
from fermions.errors import EXIT_XCHECK, ConfigError, FermiGaussError, NotCompletelyPositive
from fermions.generators import GeneratorPair, classify, partition, split_orthogonal
from fermions.lindblad_bridge import (
    effective_hamiltonian_operator,
    extract_lindblad,
    format_terms,
    render_lindblad_operator,
)
from fermions.phase_space import mode_nus
from lab.fock_oracle import MAX_MODES, cross_validate, passes
from utils import config
from utils.formats import (
    dumps_json,
    generator_to_json,
    lindblad_to_json,
    load_generator,
    load_generator_or_channel,
    load_state,
    verdict_to_json,
    write_csv_atomic,
    write_json_atomic,
    write_text_atomic,
)
from utils.report import build_catalog_markdown, build_catalog_payload, build_classify_markdown

FORMATS = ("json", "csv", "markdown")


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[Path] = field(default_factory=list)
    out: Path | None = None
    format: str = "json"
    tol: float | None = None
    t_max: float = 2.0
    samples: int = 21
    method: str = "auto"
    params: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        inputs = [Path(p) for p in (getattr(args, "generator", None), getattr(args, "state", None), getattr(args, "file", None)) if p]
        cfg = cls(
            subcommand=args.command,
            inputs=inputs,
            out=args.out,
            format=args.format or _default_format(args.command),
            tol=args.tol,
            t_max=getattr(args, "t_max", 2.0),
            samples=getattr(args, "samples", 21),
            method=getattr(args, "method", "auto"),
            params=_parse_params(getattr(args, "param", None) or []),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if not self.t_max > 0:
            raise ConfigError(f"--t-max must be positive, got {self.t_max}")
        if self.samples < 2:
            raise ConfigError(f"--samples must be at least 2, got {self.samples}")
        if self.tol is not None and not self.tol >= 0:
            raise ConfigError(f"--tol must be non-negative, got {self.tol}")
        allowed = SUPPORTED_FORMATS.get(self.subcommand, FORMATS)
        if self.format not in allowed:
            raise ConfigError(f"{self.subcommand} writes {', '.join(allowed)}, not {self.format}")


SUPPORTED_FORMATS = {
    "classify": ("json", "markdown"),
    "simulate": ("csv", "json"),
    "catalog": ("markdown", "json"),
    "xcheck": ("json",),
    "check-cp": ("json",),
    "lindblad": ("json",),
}


def _default_format(command: str) -> str:
    return SUPPORTED_FORMATS.get(command, FORMATS)[0]


def _parse_params(items: list[str]) -> dict[str, float]:
    params: dict[str, float] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--param expects key=value, got {item!r}")
        try:
            params[key.strip()] = float(raw)
        except ValueError as e:
            raise ConfigError(f"--param {key.strip()}: {raw!r} is not a number") from e
    return params


def _status(cfg: RunConfig, message: str) -> None:
    # stdout carries the data itself when no --out is given
    print(message, file=sys.stdout if cfg.out else sys.stderr)


def _emit_json(cfg: RunConfig, payload) -> None:
    if cfg.out:
        write_json_atomic(cfg.out, payload)
        _status(cfg, f"[OK] Wrote {cfg.out}")
    else:
        print(dumps_json(payload))


def _emit_text(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        write_text_atomic(cfg.out, text)
        _status(cfg, f"[OK] Wrote {cfg.out}")
    else:
        print(text)


def _complex_text(value) -> object:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def classify_payload(gen: GeneratorPair, source: str, tol: float | None = None) -> dict:
    report = partition(gen)
    summary = classify(gen)
    verdict = check_generator_cp(gen, tol)
    trace_AN, _ = trace_diagnostic(gen, tol)
    H_eff, _ = split_orthogonal(gen.A)
    terms = effective_hamiltonian_operator(H_eff)
    payload = {
        "source": source,
        "N": gen.N,
        "classes": list(summary.names),
        "class_keys": list(summary.present),
        "impossible": list(summary.impossible),
        "norms": report.norms,
        "residuals": report.residuals,
        "cp": verdict_to_json(verdict, noise_deficit(gen), trace_AN),
        "minimum_noise": minimum_noise_report(gen, tol),
        "hamiltonian": format_terms(terms),
        "hamiltonian_terms": [{"coefficient": _complex_text(c), "term": label} for c, label in terms],
        "lindblad": None,
    }
    if verdict.is_cp:
        ld = extract_lindblad(gen, tol)
        channels = lindblad_to_json(ld)["channels"]
        for ch, (rate, ell) in zip(channels, ld.channels):
            ch["operator"] = format_terms(render_lindblad_operator(rate, ell)["ladder"])
        payload["lindblad"] = channels
    return payload


def cmd_classify(cfg: RunConfig) -> int:
    path = cfg.inputs[0]
    gen = load_generator(path)
    payload = classify_payload(gen, str(path), cfg.tol)
    if cfg.format == "markdown":
        _emit_text(cfg, build_classify_markdown(payload))
    else:
        _emit_json(cfg, payload)
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    gen = load_generator(cfg.inputs[0])
    gamma0 = load_state(cfg.inputs[1])
    times = np.linspace(0.0, cfg.t_max, cfg.samples)
    traj = evolve_master(gen, gamma0, times, method=cfg.method, tol=cfg.tol)
    if cfg.format == "json":
        _emit_json(
            cfg,
            {
                "generator": generator_to_json(gen),
                "method": traj.method,
                "samples": traj.observables(),
                "states": [g.tolist() for g in traj.states],
            },
        )
    elif cfg.out:
        write_csv_atomic(cfg.out, trajectory_header(gen.N), trajectory_rows(traj))
        _status(cfg, f"[OK] Wrote {len(times)} samples to {cfg.out} (method {traj.method})")
    else:
        print(",".join(trajectory_header(gen.N)))
        for row in trajectory_rows(traj):
            print(",".join(row))
    if not np.all(traj.physical):
        _status(cfg, "[WARN] Some samples are unphysical; the generator is not completely positive")
    fixed = steady_state(gen)
    if fixed.unique and fixed.stable:
        nus = ", ".join(f"{v:.6g}" for v in mode_nus(fixed.gamma))
        _status(cfg, f"[INFO] Steady state is unique: nu = ({nus})")
    elif fixed.unique:
        _status(cfg, f"[INFO] Fixed point is not attracting: {fixed.reason}")
    else:
        _status(cfg, f"[INFO] No unique steady state: {fixed.reason}")
    return 0


def cmd_catalog(cfg: RunConfig) -> int:
    payload = build_catalog_payload(cfg.params)
    if cfg.format == "json":
        _emit_json(cfg, payload)
    else:
        _emit_text(cfg, build_catalog_markdown(payload))
    return 0


def cmd_xcheck(cfg: RunConfig) -> int:
    gen = load_generator(cfg.inputs[0])
    gamma0 = load_state(cfg.inputs[1])
    if gen.N > MAX_MODES:
        raise ConfigError(f"xcheck supports at most {MAX_MODES} modes, got {gen.N}")
    if not check_generator_cp(gen, cfg.tol).is_cp:
        raise NotCompletelyPositive(f"{cfg.inputs[0]}: generator is not completely positive; refusing to cross-check")
    deviation = cross_validate(gen, gamma0, cfg.t_max, samples=cfg.samples, tol=cfg.tol)
    threshold = config.xcheck_tol()
    ok = passes(deviation)
    tag = "[OK]" if ok else "[FAIL]"
    print(f"{tag} max deviation {deviation:.3e} over t in [0, {cfg.t_max:g}] (threshold {threshold:.1e})")
    if cfg.out:
        write_json_atomic(cfg.out, {"max_deviation": deviation, "threshold": threshold, "pass": ok})
    return 0 if ok else EXIT_XCHECK


def cmd_check_cp(cfg: RunConfig) -> int:
    obj = load_generator_or_channel(cfg.inputs[0])
    if isinstance(obj, GaussianChannel):
        payload = verdict_to_json(check_channel_cp(obj, cfg.tol))
    else:
        trace_AN, _ = trace_diagnostic(obj, cfg.tol)
        payload = verdict_to_json(check_generator_cp(obj, cfg.tol), noise_deficit(obj), trace_AN)
    _emit_json(cfg, payload)
    return 0


def cmd_lindblad(cfg: RunConfig) -> int:
    gen = load_generator(cfg.inputs[0])
    _emit_json(cfg, lindblad_to_json(extract_lindblad(gen, cfg.tol)))
    return 0


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "classify": cmd_classify,
    "simulate": cmd_simulate,
    "catalog": cmd_catalog,
    "xcheck": cmd_xcheck,
    "check-cp": cmd_check_cp,
    "lindblad": cmd_lindblad,
}


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help="Output file (default: stdout).")
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format (default depends on command).")
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=f"Verdict tolerance for CP and physicality checks (default: ${config.ENV_TOL} or {config.TOL_CP:g}).",
    )

    parser = argparse.ArgumentParser(
        description="Open fermionic Gaussian dynamics: classify, simulate and cross-check generators."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Partition a generator and report CP and Lindblad data.")
    p.add_argument("generator", help="Generator JSON {N, A, C}.")

    p = sub.add_parser("simulate", parents=[common], help="Evolve a state under a generator.")
    p.add_argument("generator", help="Generator JSON {N, A, C}.")
    p.add_argument("state", help="State JSON {N, gamma}.")
    p.add_argument("--t-max", type=float, default=2.0, help="Final time (default: 2).")
    p.add_argument("--samples", type=int, default=21, help="Number of equally spaced samples including t=0 (default: 21).")
    p.add_argument("--method", choices=METHODS, default="auto", help="Propagator (default: closed form when available).")

    p = sub.add_parser("catalog", parents=[common], help="Reproduce the nine-class table with computed spectra.")
    p.add_argument(
        "--param",
        action="append",
        metavar="KEY=VALUE",
        help="Override a catalog parameter (r, b, c, E1, E2, b_w, b_x, b_z, c1..c4); repeatable.",
    )

    p = sub.add_parser("xcheck", parents=[common], help="Cross-check against the density-matrix oracle (N <= 3).")
    p.add_argument("generator", help="Generator JSON {N, A, C}.")
    p.add_argument("state", help="State JSON {N, gamma}.")
    p.add_argument("--t-max", type=float, default=2.0, help="Final time (default: 2).")
    p.add_argument("--samples", type=int, default=21, help="Number of comparison times (default: 21).")

    p = sub.add_parser("check-cp", parents=[common], help="CP verdict for a generator or channel JSON.")
    p.add_argument("file", help="Generator JSON {N, A, C} or channel JSON {N, O_A, R}.")

    p = sub.add_parser("lindblad", parents=[common], help="Dump the Lindblad form of a CP generator.")
    p.add_argument("generator", help="Generator JSON {N, A, C}.")

    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.subcommand](cfg)
    except FermiGaussError as e:
        print(f"[ERROR] {e}")
        return e.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
