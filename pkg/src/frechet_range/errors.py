"""Exception hierarchy shared by all modules."""


class FrechetRangeError(Exception):
    """Base class for all package errors."""


class InvalidSeries(FrechetRangeError, ValueError):
    pass


class CanonicalTooLong(FrechetRangeError, ValueError):
    def __init__(self, series_id, canonical_len, target):
        self.series_id = series_id
        self.canonical_len = canonical_len
        self.target = target
        super().__init__(
            f"series {series_id!r} has canonical complexity {canonical_len} "
            f"> allowed {target}"
        )


class DimensionMismatch(FrechetRangeError, ValueError):
    pass


class DuplicateId(FrechetRangeError, ValueError):
    pass


class IndexOutOfRange(FrechetRangeError, IndexError):
    pass


class UnsupportedKind(FrechetRangeError, ValueError):
    pass


class ShapeViolation(FrechetRangeError, ValueError):
    pass


class ComplexityTooLarge(FrechetRangeError, ValueError):
    pass


class OutOfUnitBox(FrechetRangeError, ValueError):
    pass


class IndexFormatError(FrechetRangeError, ValueError):
    pass
