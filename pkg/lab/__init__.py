"""Two-mode analysis, the canonical catalog and the Fock-space oracle."""

from .catalog import CatalogEntry, DEFAULT_PARAMS, catalog
from .two_mode import GSystem, build_g_system, gamma_to_g, g_to_gamma, spectral_report

__all__ = [
    "CatalogEntry",
    "DEFAULT_PARAMS",
    "GSystem",
    "build_g_system",
    "catalog",
    "gamma_to_g",
    "g_to_gamma",
    "spectral_report",
]
