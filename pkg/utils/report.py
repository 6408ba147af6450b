#!/usr/bin/env python3
"""Builds the catalog table and per-generator classification reports."""
from __future__ import annotations

from collections.abc import Mapping
from datetime import datetime
from typing import Any

from fermions.generators import CLASS_NAMES, CLASS_TRAITS, IMPOSSIBLE_CLASSES
from lab.catalog import catalog, entry_summary, merge_params


def _yes_no(flag: bool) -> str:
    return "Yes" if flag else "No"


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _spectrum(values: list[float]) -> str:
    return ", ".join(_fmt(v) for v in values)


def build_catalog_payload(overrides: Mapping[str, float] | None = None) -> dict[str, Any]:
    params = merge_params(overrides)
    entries = catalog(params)
    summaries = [entry_summary(entry, params) for entry in entries]
    table = []
    for key, (single, orthogonal, passive, dependent) in CLASS_TRAITS.items():
        table.append(
            {
                "key": key,
                "single_mode": single,
                "orthogonal": orthogonal,
                "passive": passive,
                "state_dependent": dependent,
                "name": CLASS_NAMES.get(key, "Not Possible"),
                "reason": IMPOSSIBLE_CLASSES.get(key, ""),
                "entries": [s["variant"] or s["name"] for s in summaries if s["key"] == key],
            }
        )
    return {
        "generated_at": datetime.now().astimezone().isoformat(timespec="seconds"),
        "params": params,
        "table": table,
        "entries": summaries,
    }


def build_catalog_markdown(payload: Mapping[str, Any]) -> str:
    params = payload["params"]
    lines = [
        "# Open Fermionic Gaussian Dynamics Catalog",
        "",
        f"- Generated: `{payload['generated_at']}`",
        "- Parameters: " + ", ".join(f"`{k}={_fmt(v)}`" for k, v in params.items()),
        "",
        "## Classification",
        "",
        "| Single-mode | Orthogonal | Passive | State-dependent | Class | Name |",
        "|:-----------:|:----------:|:-------:|:---------------:|:------|:-----|",
    ]
    for row in payload["table"]:
        name = row["name"] if row["name"] != "Not Possible" else f"Not Possible ({row['reason']})"
        lines.append(
            f"| {_yes_no(row['single_mode'])} | {_yes_no(row['orthogonal'])} | {_yes_no(row['passive'])} "
            f"| {_yes_no(row['state_dependent'])} | `{row['key']}` | {name} |"
        )

    lines.extend(
        [
            "",
            "## Spectra",
            "",
            "| Entry | Matrix | Predicted eigenvalues | Max error | CP |",
            "|:------|:------:|:----------------------|----------:|:--:|",
        ]
    )
    for s in payload["entries"]:
        label = f"{s['name']} ({s['variant']})" if s["variant"] else s["name"]
        matrix = "𝒜" if s["order"] == 1 else "𝒜²"
        lines.append(
            f"| {label} | {matrix} | {_spectrum(s['predicted'])} | {s['max_error']:.2e} | {_yes_no(s['is_cp'])} |"
        )

    lines.extend(["", "## Entries", ""])
    for s in payload["entries"]:
        label = f"{s['name']} ({s['variant']})" if s["variant"] else s["name"]
        lines.append(f"### {label} `{s['key']}`")
        for mode in s["modes"]:
            lines.append(f"- `{mode['combination']}`: {_fmt(mode['eigenvalue'])}")
        if s["conserved"]:
            lines.append("- Conserved: " + ", ".join(f"`{c}`" for c in s["conserved"]))
        for osc in s["oscillating"]:
            combos = ", ".join(f"`{c}`" for c in osc["combinations"])
            lines.append(f"- Oscillating at {_fmt(osc['frequency'])}: {combos}")
        if "extremal" in s:
            at = ", ".join(f"{k}={_fmt(v)}" for k, v in s["extremal"].items())
            shielded = ", ".join(f"`{c}`" for c in s["shielded"])
            lines.append(f"- Shielded at {at}: {shielded}")
        if s["note"]:
            lines.append(f"- Note: {s['note']}")
        lines.append("")
    return "\n".join(lines)


def build_classify_markdown(payload: Mapping[str, Any]) -> str:
    verdict = payload["cp"]
    lines = [
        f"# Generator Report: {payload['source']}",
        "",
        f"- Modes: **{payload['N']}**",
        "- Classes: " + (", ".join(payload["classes"]) if payload["classes"] else "none (no dynamics)"),
        f"- Completely positive: **{_yes_no(verdict['is_cp'])}** (min eigenvalue {_fmt(verdict['min_eig'])})",
        f"- Noise deficit: {_fmt(verdict['noise_deficit'])}",
        f"- Tr(A_N): {_fmt(verdict['trace_AN'])}",
        "",
        "## Partition",
        "",
        "| Class | Name | Norm |",
        "|:------|:-----|-----:|",
    ]
    for key, norm in payload["norms"].items():
        lines.append(f"| `{key}` | {CLASS_NAMES[key]} | {norm:.3e} |")
    lines.extend(["", "Structural residuals: " + ", ".join(f"`{k}` {v:.1e}" for k, v in payload["residuals"].items())])
    lines.extend(["", "## Effective Hamiltonian", "", f"`H = {payload['hamiltonian']}`", ""])
    lindblad = payload.get("lindblad")
    if lindblad is None:
        lines.append("No Lindblad form: the generator is not completely positive.")
    else:
        lines.extend(["## Lindblad Channels", "", "| Rate | Operator |", "|-----:|:---------|"])
        for ch in lindblad:
            lines.append(f"| {_fmt(ch['gamma'])} | `{ch['operator']}` |")
    lines.append("")
    return "\n".join(lines)
