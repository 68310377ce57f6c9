"""Range reporting for 1-D time series under the continuous Frechet distance."""

from .cells import CellSequence, enumerate_valid
from .engine import (
    FrechetIndex,
    PointStoreIndex,
    build_frechet_index,
    build_point_store,
    naive_query,
    query_frechet_index,
    query_point_store,
)
from .errors import (
    CanonicalTooLong,
    ComplexityTooLarge,
    DimensionMismatch,
    DuplicateId,
    FrechetRangeError,
    IndexFormatError,
    IndexOutOfRange,
    InvalidSeries,
    OutOfUnitBox,
    ShapeViolation,
    UnsupportedKind,
)
from .oracle import decide_frechet
from .reductions import point_to_series, rect_to_series
from .series import CanonicalSeries, Shape, TimeSeries, canonicalize

__version__ = "0.1.0"

__all__ = [
    "CanonicalSeries", "CanonicalTooLong", "CellSequence", "ComplexityTooLarge",
    "DimensionMismatch", "DuplicateId", "FrechetIndex", "FrechetRangeError",
    "IndexFormatError", "IndexOutOfRange", "InvalidSeries", "OutOfUnitBox",
    "PointStoreIndex", "Shape", "ShapeViolation", "TimeSeries", "UnsupportedKind",
    "build_frechet_index", "build_point_store", "canonicalize", "decide_frechet",
    "enumerate_valid", "naive_query", "point_to_series", "query_frechet_index",
    "query_point_store", "rect_to_series",
]
