#!/usr/bin/env python3
"""Exception hierarchy shared by the numerics and the command line."""
from __future__ import annotations

EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_UNPHYSICAL_INITIAL = 4
EXIT_XCHECK = 5


class FermiGaussError(Exception):
    """Base class; `exit_code` is what the CLI returns when this escapes a command."""

    exit_code = EXIT_INVARIANT


class FormatError(FermiGaussError):
    exit_code = EXIT_PARSE


class ConfigError(FermiGaussError):
    exit_code = EXIT_PARSE


class NonHermitianInput(FermiGaussError):
    pass


class SingularLyapunov(FermiGaussError):
    pass


class OutOfRangeNu(FermiGaussError):
    pass


class ModeIndexError(FermiGaussError, IndexError):
    pass


class DomainError(FermiGaussError, ValueError):
    pass


class OddDimension(FermiGaussError):
    pass


class DimensionMismatch(FermiGaussError):
    pass


class NotAntisymmetric(FermiGaussError):
    def __init__(self, label: str, i: int, j: int, value_ij: float, value_ji: float):
        self.label = label
        self.pair = (i, j)
        super().__init__(
            f"{label} is not antisymmetric: entry ({i + 1},{j + 1}) = {value_ij:.12g} "
            f"but ({j + 1},{i + 1}) = {value_ji:.12g}"
        )


class NonAntisymmetricH(NotAntisymmetric):
    pass


class NonOrthogonalJoint(FermiGaussError):
    pass


class UnphysicalEnvironment(FermiGaussError):
    pass


class NotCompletelyPositive(FermiGaussError):
    pass


class UnphysicalInitialState(FermiGaussError):
    exit_code = EXIT_UNPHYSICAL_INITIAL


class UnphysicalState(FermiGaussError):
    pass


class PhysicalityViolation(FermiGaussError):
    """A CP evolution left the physical set; points at a numerical bug, not bad input."""


class TrajectoryDiverged(FermiGaussError):
    """The propagated state overflowed to non-finite entries."""


class WrongModeCount(FermiGaussError):
    pass


class TooManyModes(FermiGaussError):
    pass


class CatalogMismatch(FermiGaussError):
    pass


class CrossCheckFailed(FermiGaussError):
    exit_code = EXIT_XCHECK
