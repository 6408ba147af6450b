#!/usr/bin/env python3
"""Numerical tolerances and their environment overrides."""
from __future__ import annotations

import os

from fermions.errors import ConfigError

# Structural checks (symmetry, antisymmetry), relative to the max-abs entry.
TOL_STRUCT = 1e-12
TOL_RECON = 1e-10
TOL_CP = 1e-10
TOL_PHYSICAL = 1e-10
TOL_CLASS = 1e-12
TOL_RATE = 1e-12
TOL_LYAPUNOV = 1e-10
TOL_TRAJECTORY = 1e-8
TOL_XCHECK = 1e-5

ENV_TOL = "FERMIGAUSS_TOL"
ENV_XCHECK_TOL = "FERMIGAUSS_XCHECK_TOL"


def _env_float(name: str) -> float | None:
    raw = (os.environ.get(name) or "").strip()
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError as e:
        raise ConfigError(f"{name}={raw!r} is not a number") from e
    if not value >= 0.0:
        raise ConfigError(f"{name}={raw!r} must be a non-negative number")
    return value


def cp_tol(tol: float | None = None) -> float:
    """Verdict tolerance for CP certificates; explicit value wins over the environment."""
    if tol is not None:
        return float(tol)
    override = _env_float(ENV_TOL)
    return TOL_CP if override is None else override


def physical_tol(tol: float | None = None) -> float:
    if tol is not None:
        return float(tol)
    override = _env_float(ENV_TOL)
    return TOL_PHYSICAL if override is None else override


def xcheck_tol(tol: float | None = None) -> float:
    if tol is not None:
        return float(tol)
    override = _env_float(ENV_XCHECK_TOL)
    return TOL_XCHECK if override is None else override
