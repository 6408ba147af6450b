#!/usr/bin/env python3
"""
Canonical two-mode generators, one per realizable class, with predicted spectra.

Each entry carries the left eigen-functionals of 𝒜 (order 1) or 𝒜² (order 2)
it predicts, as (coefficient vector over g, eigenvalue) pairs. Shielding
entries also name the parameter value at which a combination stops decaying
and, when known in closed form, the direction of the resulting limit state.
"""
from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from fermions import generators as gens
from fermions.cp_analysis import check_generator_cp
from fermions.errors import CatalogMismatch, ConfigError
from fermions.generators import GeneratorPair
from lab.two_mode import (
    TWO_MODE_LABELS,
    GSystem,
    build_g_system,
    combination_label,
    gamma_to_g,
    g_to_gamma,
    match_spectra,
    spectral_report,
)

DEFAULT_PARAMS: dict[str, float] = {"r": 1.0, "b": 0.5, "c": 0.5, "E1": 1.0, "E2": 0.7}
KNOWN_PARAMS = ("r", "b", "c", "E1", "E2", "b_w", "b_x", "b_z", "c1", "c2", "c3", "c4")

Modes = list[tuple[np.ndarray, float]]


def _vec(**coeffs: float) -> np.ndarray:
    v = np.zeros(6)
    for name, value in coeffs.items():
        v[TWO_MODE_LABELS.index(name)] = value
    return v


def _coupling(p: Mapping[str, float], name: str) -> float:
    return float(p.get(name, p["b"]))


def _correlations(p: Mapping[str, float]) -> tuple[float, float, float, float]:
    c = float(p["c"])
    return (
        float(p.get("c1", c)),
        float(p.get("c2", c / 2)),
        float(p.get("c3", -c / 2)),
        float(p.get("c4", c)),
    )


def merge_params(overrides: Mapping[str, float] | None = None) -> dict[str, float]:
    params = dict(DEFAULT_PARAMS)
    for key, value in (overrides or {}).items():
        if key not in KNOWN_PARAMS:
            raise ConfigError(f"unknown catalog parameter {key!r}; known: {', '.join(KNOWN_PARAMS)}")
        params[key] = float(value)
    return params


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    key: str
    name: str
    variant: str
    order: int
    build: Callable[[Mapping[str, float]], GeneratorPair]
    modes: Callable[[Mapping[str, float]], Modes]
    extremal: Callable[[Mapping[str, float]], dict[str, float]] | None = None
    shielded: tuple[np.ndarray, ...] = ()
    limit_direction: np.ndarray | None = None
    note: str = ""

    @property
    def label(self) -> str:
        return f"{self.name} ({self.variant})" if self.variant else self.name

    def predicted_spectrum(self, params: Mapping[str, float]) -> list[float]:
        return [mu for _, mu in self.modes(params)]

    def system(self, params: Mapping[str, float]) -> GSystem:
        return build_g_system(self.build(params))

    def power(self, params: Mapping[str, float]) -> np.ndarray:
        a = self.system(params).a_matrix
        return a if self.order == 1 else a @ a

    def extremal_params(self, params: Mapping[str, float]) -> dict[str, float] | None:
        if self.extremal is None:
            return None
        return {**params, **self.extremal(params)}

    def predicted_limit(self, gamma0) -> np.ndarray:
        """Long-time state at the extremal point: k·direction with k fixed by the shielded sum."""
        if self.limit_direction is None or len(self.shielded) != 1:
            raise CatalogMismatch(f"{self.label} has no closed-form limit state")
        v = self.shielded[0]
        k = float(v @ gamma_to_g(gamma0)) / float(v @ self.limit_direction)
        return g_to_gamma(k * self.limit_direction)


def _free_evolution_modes(p: Mapping[str, float]) -> Modes:
    E1, E2 = float(p["E1"]), float(p["E2"])
    slow, fast = -((E1 - E2) ** 2), -((E1 + E2) ** 2)
    return [
        (_vec(nu1=1), 0.0),
        (_vec(nu2=1), 0.0),
        (_vec(g1=1, g4=1), slow),
        (_vec(g1=1, g4=-1), fast),
        (_vec(g2=1, g3=1), fast),
        (_vec(g2=1, g3=-1), slow),
    ]


def _shielding_z_modes(p: Mapping[str, float]) -> Modes:
    r, b = float(p["r"]), _coupling(p, "b_z")
    return [
        (_vec(nu1=1), -2 * r),
        (_vec(nu2=1), 0.0),
        (_vec(g1=1), -(r - b)),
        (_vec(g2=1), -(r - b)),
        (_vec(g3=1), -(r + b)),
        (_vec(g4=1), -(r + b)),
    ]


def _shielding_x_modes(p: Mapping[str, float]) -> Modes:
    r, b = float(p["r"]), _coupling(p, "b_x")
    return [
        (_vec(nu1=1), -2 * r),
        (_vec(nu2=1), 0.0),
        (_vec(g1=1, g3=1), -(r - b)),
        (_vec(g2=1, g4=1), -(r - b)),
        (_vec(g1=1, g3=-1), -(r + b)),
        (_vec(g2=1, g4=-1), -(r + b)),
    ]


def _single_mode_noise_modes(p: Mapping[str, float]) -> Modes:
    r = float(p["r"])
    return [
        (_vec(nu1=1), -2 * r),
        (_vec(nu2=1), 0.0),
        (_vec(g1=1), -r),
        (_vec(g2=1), -r),
        (_vec(g3=1), -r),
        (_vec(g4=1), -r),
    ]


def _rotation_modes(p: Mapping[str, float]) -> Modes:
    b = _coupling(p, "b_w")
    return [
        (_vec(nu1=1, nu2=-1), -4 * b**2),
        (_vec(g1=1, g4=1), -4 * b**2),
        (_vec(nu1=1, nu2=1), 0.0),
        (_vec(g1=1, g4=-1), 0.0),
        (_vec(g2=1), 0.0),
        (_vec(g3=1), 0.0),
    ]


def _counter_rotation_modes(p: Mapping[str, float]) -> Modes:
    b = _coupling(p, "b_x")
    return [
        (_vec(nu1=1, nu2=1), -4 * b**2),
        (_vec(g1=1, g4=-1), -4 * b**2),
        (_vec(nu1=1, nu2=-1), 0.0),
        (_vec(g1=1, g4=1), 0.0),
        (_vec(g2=1), 0.0),
        (_vec(g3=1), 0.0),
    ]


def _active_shielding_modes(p: Mapping[str, float]) -> Modes:
    r, b = float(p["r"]), _coupling(p, "b_w")
    return [
        (_vec(nu1=1, nu2=1, g1=1, g4=1), -2 * (r + b)),
        (_vec(nu1=1, nu2=1, g1=-1, g4=-1), -2 * (r - b)),
        (_vec(nu1=1, nu2=-1), -2 * r),
        (_vec(g1=1, g4=-1), -2 * r),
        (_vec(g2=1, g3=1), -2 * r),
        (_vec(g2=1, g3=-1), -2 * r),
    ]


def _passive_shielding_modes(p: Mapping[str, float]) -> Modes:
    r, b = float(p["r"]), _coupling(p, "b_x")
    return [
        (_vec(nu1=1, nu2=1), -2 * r),
        (_vec(nu1=1, nu2=-1, g1=1, g4=-1), -2 * (r - b)),
        (_vec(nu1=1, nu2=-1, g1=-1, g4=1), -2 * (r + b)),
        (_vec(g1=1, g4=1), -2 * r),
        (_vec(g2=1, g3=1), -2 * r),
        (_vec(g2=1, g3=-1), -2 * r),
    ]


def _correlating_modes(p: Mapping[str, float]) -> Modes:
    r = float(p["r"])
    return [(np.eye(6)[k], -2 * r) for k in range(6)]


ENTRIES: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        key="A_OP^S",
        name="Free Evolution",
        variant="",
        order=2,
        build=lambda p: gens.free_evolution(p["E1"], p["E2"]),
        modes=_free_evolution_modes,
    ),
    CatalogEntry(
        key="A_NP^S",
        name="Correlation Shielding",
        variant="b_z",
        order=1,
        build=lambda p: gens.correlation_shielding(p["r"], b_z=_coupling(p, "b_z"), n_modes=2),
        modes=_shielding_z_modes,
        extremal=lambda p: {"b_z": float(p["r"])},
        shielded=(_vec(g1=1), _vec(g2=1)),
        note="at b_z = -r the g3 and g4 correlations are shielded instead",
    ),
    CatalogEntry(
        key="A_NP^S",
        name="Correlation Shielding",
        variant="b_x",
        order=1,
        build=lambda p: gens.correlation_shielding(p["r"], b_x=_coupling(p, "b_x"), n_modes=2),
        modes=_shielding_x_modes,
        extremal=lambda p: {"b_x": float(p["r"])},
        shielded=(_vec(g1=1, g3=1), _vec(g2=1, g4=1)),
        note="at b_x = -r the g1-g3 and g2-g4 correlations are shielded instead",
    ),
    CatalogEntry(
        key="A_NA^S",
        name="Noise",
        variant="",
        order=1,
        build=lambda p: gens.noise(p["r"], n_modes=2),
        modes=_single_mode_noise_modes,
    ),
    CatalogEntry(
        key="C_NA^S",
        name="Purifying",
        variant="",
        order=1,
        build=lambda p: gens.purifying(p["r"], p["c"], n_modes=2),
        modes=_single_mode_noise_modes,
        note="nu1 relaxes to c/2r",
    ),
    CatalogEntry(
        key="A_OP^M",
        name="Multi-mode Rotation",
        variant="b_w",
        order=2,
        build=lambda p: gens.multimode_rotation(_coupling(p, "b_w")),
        modes=_rotation_modes,
        note="nu1-nu2 and g1+g4 oscillate at 2|b_w|",
    ),
    CatalogEntry(
        key="A_OA^M",
        name="Multi-mode Counter Rotation",
        variant="b_x",
        order=2,
        build=lambda p: gens.counter_rotation(_coupling(p, "b_x")),
        modes=_counter_rotation_modes,
        note="nu1+nu2 and g1-g4 oscillate at 2|b_x|",
    ),
    CatalogEntry(
        key="A_NA^M",
        name="Multi-mode Active Corr. Shielding",
        variant="b_w",
        order=1,
        build=lambda p: gens.active_shielding(p["r"], _coupling(p, "b_w")),
        modes=_active_shielding_modes,
        extremal=lambda p: {"b_w": -float(p["r"])},
        shielded=(_vec(nu1=1, nu2=1, g1=1, g4=1),),
        limit_direction=_vec(nu1=1, nu2=1, g1=1, g4=1),
    ),
    CatalogEntry(
        key="A_NP^M",
        name="Multi-mode Passive Corr. Shielding",
        variant="b_x",
        order=1,
        build=lambda p: gens.passive_shielding(p["r"], _coupling(p, "b_x")),
        modes=_passive_shielding_modes,
        extremal=lambda p: {"b_x": float(p["r"])},
        shielded=(_vec(nu1=1, nu2=-1, g1=1, g4=-1),),
        limit_direction=_vec(nu1=1, nu2=-1, g1=1, g4=-1),
        note="at b_x = -r the preserved sum is nu1-nu2-g1+g4",
    ),
    CatalogEntry(
        key="C_NP^M",
        name="Correlating",
        variant="",
        order=1,
        build=lambda p: gens.correlating(p["r"], *_correlations(p)),
        modes=_correlating_modes,
        note="g_i relaxes to c_i/2r",
    ),
)


def verify_entry(entry: CatalogEntry, params: Mapping[str, float], tol: float = 1e-10) -> float:
    """Check predicted eigenvalues and functionals against the computed system; returns the worst error."""
    power = entry.power(params)
    scale = max(1.0, float(np.max(np.abs(power))))
    computed = scipy.linalg.eigvals(power)
    ok, worst = match_spectra(computed, entry.predicted_spectrum(params), tol)
    if not ok:
        raise CatalogMismatch(f"{entry.label}: spectrum off by {worst:.3e} at {dict(params)}")
    for v, mu in entry.modes(params):
        err = float(np.max(np.abs(v @ power - mu * v)))
        worst = max(worst, err)
        if err > tol * scale:
            raise CatalogMismatch(
                f"{entry.label}: {combination_label(v)} is not a left eigenvector at {mu:.6g} (error {err:.3e})"
            )
    extremal = entry.extremal_params(params)
    if extremal is not None:
        sys = entry.system(extremal)
        for v in entry.shielded:
            err = max(float(np.max(np.abs(v @ sys.a_matrix))), abs(float(v @ sys.c_vector)))
            worst = max(worst, err)
            if err > tol * scale:
                raise CatalogMismatch(f"{entry.label}: {combination_label(v)} not conserved at the extremal point")
    return worst


def catalog(params: Mapping[str, float] | None = None, verify: bool = True) -> list[CatalogEntry]:
    merged = merge_params(params)
    entries = list(ENTRIES)
    if verify:
        for entry in entries:
            verify_entry(entry, merged)
    return entries


def entry_summary(entry: CatalogEntry, params: Mapping[str, float]) -> dict[str, object]:
    gen = entry.build(params)
    sys = build_g_system(gen)
    report = spectral_report(sys)
    computed = report.eigenvalues if entry.order == 1 else report.squared_eigenvalues
    _, worst = match_spectra(computed, entry.predicted_spectrum(params))
    verdict = check_generator_cp(gen)
    summary: dict[str, object] = {
        "key": entry.key,
        "name": entry.name,
        "variant": entry.variant,
        "order": entry.order,
        "is_cp": verdict.is_cp,
        "predicted": [float(mu) for mu in sorted(entry.predicted_spectrum(params))],
        "computed": [[float(z.real), float(z.imag)] for z in computed],
        "max_error": worst,
        "modes": [{"combination": combination_label(v), "eigenvalue": float(mu)} for v, mu in entry.modes(params)],
        "conserved": [combination_label(v) for v in report.conserved],
        "oscillating": [
            {"frequency": freq, "combinations": [combination_label(v) for v in rows]}
            for freq, rows in report.oscillating
        ],
        "note": entry.note,
    }
    extremal = entry.extremal_params(params)
    if extremal is not None:
        changed = {k: v for k, v in extremal.items() if params.get(k) != v}
        summary["extremal"] = changed
        summary["shielded"] = [combination_label(v) for v in entry.shielded]
    return summary
