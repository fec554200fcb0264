"""Exception and warning types."""
from __future__ import annotations


class GeoOrbitError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(GeoOrbitError, ValueError):
    pass


class JacobiViolation(GeoOrbitError):
    def __init__(self, i: int, j: int, k: int, residual: tuple):
        self.triple = (i, j, k)
        self.residual = residual
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k}); "
                         f"residual {[str(x) for x in residual]}")


class InternalInconsistency(GeoOrbitError):
    pass


class NotASubalgebra(GeoOrbitError):
    pass


class NotAnIdeal(GeoOrbitError):
    pass


class IsotropyNotCompactType(GeoOrbitError):
    """The Killing form is not negative definite on the isotropy algebra."""


class ComplementNotInvariant(GeoOrbitError):
    pass


class MetricNotInvariant(GeoOrbitError):
    def __init__(self, message: str, triple: tuple | None = None):
        self.triple = triple
        super().__init__(message)


class MetricNotPositive(GeoOrbitError):
    pass


class LeviNotInvariant(GeoOrbitError):
    pass


class NotTwoStep(GeoOrbitError):
    pass


class SpectrumNumeric(GeoOrbitError):
    """Raised by audits that require an exact spectrum."""


class NotNormalized(GeoOrbitError):
    pass


class CliffordRelationViolation(GeoOrbitError):
    pass


class Gonil2HypothesisFailed(GeoOrbitError):
    def __init__(self, which: int, sample):
        self.which = which
        self.sample = sample
        super().__init__(f"hypothesis ({which}) fails at sample {sample}")


class SchemaError(GeoOrbitError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class NumericFallbackWarning(UserWarning):
    """An eigen-analysis left the rationals and switched to floating point."""
