"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EquicharError(Exception):
    """Base class for all errors raised by this package."""


class InputValidationError(EquicharError, ValueError):
    """Malformed or out-of-bounds input data."""


class ModulusMismatch(InputValidationError):
    """Two character-multiplicity vectors live over different cyclic groups."""


class InvalidJump(InputValidationError):
    """A ramification jump violates its arithmetic constraints."""


class NegativeMultiplicity(EquicharError):
    """A virtual module was materialized with a negative coefficient.

    Signals inconsistent input data or a misapplied formula, never a rounding
    issue: all arithmetic is exact.
    """

    def __init__(self, exponent: int, value: int):
        super().__init__(f"multiplicity of psi^{exponent} is {value} < 0")
        self.exponent = exponent
        self.value = value


class NotAnOrbitSum(EquicharError):
    """The module is not a twist-orbit sum, so no orbit factor exists."""


class InconsistentLayerData(EquicharError):
    """Socle-layer data does not come from any actual module."""


class InvalidCover(EquicharError):
    """Ramification data admits no curve (non-integral or negative genus,
    or a formula materialization failed on it)."""


class EtaleUnsupported(EquicharError):
    """The unramified case is outside the scope of the wild-cover formula."""


class RelationCheckFailed(EquicharError):
    """Constructed matrices do not satisfy the defining group relations."""


class InternalCheckError(EquicharError):
    """An internal invariant that must hold for every valid input failed."""
