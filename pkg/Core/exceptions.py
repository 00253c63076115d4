"""Errors raised by the geometry, bound and search code.

Everything derives from ``ArcError``, itself a ``ValueError``, so callers that only
care about bad input can keep catching ``ValueError``.
"""


class ArcError(ValueError):
    pass


class FieldError(ArcError):
    """The field size is not one of the supported primes."""


class NotProjectivePoint(ArcError):
    pass


class DimensionMismatch(ArcError):
    pass


class SubspaceCapExceeded(ArcError):
    """An enumeration would produce more subspaces than PGARC_SUBSPACE_CAP allows."""

    def __init__(self, count: int, cap: int, what: str = "subspaces"):
        self.count = count
        self.cap = cap
        super().__init__(f"{count} {what} exceed the configured cap of {cap}")


class ProjectionUndefined(ArcError):
    pass


class NotFullLength(ArcError):
    pass


class RankDeficient(ArcError):
    pass


class InfeasiblePlacement(ArcError):
    pass


class TrivialQuery(ArcError):
    pass


class PrescriptionViolation(ArcError):
    pass


class BudgetExceeded(ArcError):
    pass


class DataFormatError(ArcError):
    """A dataset, matrix, arc or oracle file does not parse."""

    def __init__(self, message: str, source: str = "", line: int | None = None):
        self.source = source
        self.line = line
        where = source
        if line is not None:
            where = f"{source}:{line}"
        super().__init__(f"{where}: {message}" if where else message)
