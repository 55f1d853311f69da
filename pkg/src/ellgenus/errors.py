"""Typed errors shared across the package."""


class EllGenusError(Exception):
    """Base class for all package errors."""


class LevelMismatch(EllGenusError):
    """Operands belong to different cyclotomic levels."""


class PrecMismatch(EllGenusError):
    """Series operands have incompatible truncation orders."""


class NonUnitConstantTerm(EllGenusError):
    """Series inversion requires an invertible constant term."""


class BadConstantTerm(EllGenusError):
    """exp needs constant term 0; log needs constant term 1."""


class FactorNotUnitModQn(EllGenusError):
    """A q-product factor is not congruent to 1 modulo q^n."""


class InsufficientXPrecision(EllGenusError):
    """The x-truncation is too small for the requested degree."""


class BadChernData(EllGenusError):
    """A Chern-number key is not a partition of the stated dimension."""


class BadSplitChernData(EllGenusError):
    """A split Chern-number key has the wrong total degree."""


class IncompatibleParity(EllGenusError):
    """Character pair parity does not match the weight."""


class BadLevelDivisibility(EllGenusError):
    """Character moduli times t do not divide the level."""


class UnsupportedLevel(EllGenusError):
    """The level is outside the supported range (N >= 4)."""


class SpanFailure(EllGenusError):
    """The candidate pool does not span the full space of modular forms."""

    def __init__(self, rank, dimension, message=None):
        self.rank = rank
        self.dimension = dimension
        super().__init__(
            message or f"candidates span rank {rank} < dimension {dimension}"
        )


class PrecisionInsufficient(EllGenusError):
    """The working precision is below the required Sturm floor."""
