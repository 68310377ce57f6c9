"""Time series values, alternation canonicalization, padding and mirroring."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

from .errors import CanonicalTooLong, InvalidSeries


class Shape(str, Enum):
    """Edge-orientation pattern of an alternating series.

    ``M``: edge ``j`` (vertex ``j`` to ``j+1``, 1-based) is non-decreasing for
    odd ``j`` and non-increasing for even ``j``.  ``W`` is the reverse.
    """

    M = "M"
    W = "W"

    def flipped(self) -> "Shape":
        return Shape.W if self is Shape.M else Shape.M

    def edge_increasing(self, j: int) -> bool:
        """Whether edge ``j`` (1-based) is non-decreasing under this shape."""
        return (j % 2 == 1) == (self is Shape.M)


@dataclass(frozen=True)
class TimeSeries:
    id: str
    values: Tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 2:
            raise InvalidSeries(f"series {self.id!r} needs at least 2 vertices")
        if not all(math.isfinite(v) for v in vals):
            raise InvalidSeries(f"series {self.id!r} has non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class CanonicalSeries:
    source_id: str
    values: Tuple[float, ...]
    shape: Shape
    canonical_len: int

    def __len__(self):
        return len(self.values)


SeriesLike = Union[TimeSeries, CanonicalSeries, Sequence[float]]


def values_of(x: SeriesLike) -> Tuple[float, ...]:
    if isinstance(x, (TimeSeries, CanonicalSeries)):
        return x.values
    if hasattr(x, "tolist"):
        return tuple(x.tolist())
    return tuple(x)


def alternation_core(values: Sequence[float]) -> list:
    """Drop repeated values and interior vertices of monotone runs.

    The result is strictly alternating and describes the same curve up to
    reparameterization.  An all-flat input yields a single vertex.
    """
    out = []
    for v in values:
        if out and out[-1] == v:
            continue
        if len(out) >= 2 and (out[-2] < out[-1]) == (out[-1] < v):
            out[-1] = v
        else:
            out.append(v)
    return out


def canonicalize(ts: SeriesLike, target_complexity: int) -> CanonicalSeries:
    if target_complexity < 2:
        raise ValueError("target_complexity must be >= 2")
    if not isinstance(ts, TimeSeries):
        ts = TimeSeries(getattr(ts, "source_id", ""), values_of(ts))
    core = alternation_core(ts.values)
    if len(core) == 1:
        core = core * 2
    if len(core) > target_complexity:
        raise CanonicalTooLong(ts.id, len(core), target_complexity)
    shape = Shape.W if core[1] < core[0] else Shape.M
    padded = tuple(core) + (core[-1],) * (target_complexity - len(core))
    return CanonicalSeries(ts.id, padded, shape, len(core))


def mirror(x):
    """Negate every value; canonical series also flip their shape."""
    if isinstance(x, CanonicalSeries):
        return CanonicalSeries(
            x.source_id, tuple(-v for v in x.values), x.shape.flipped(), x.canonical_len
        )
    if isinstance(x, TimeSeries):
        return TimeSeries(x.id, tuple(-v for v in x.values))
    return tuple(-v for v in x)


def has_shape(values: Sequence[float], shape: Shape) -> bool:
    """Check the alternating edge pattern (ties satisfy either direction)."""
    for j in range(1, len(values)):
        a, b = values[j - 1], values[j]
        if shape.edge_increasing(j):
            if a > b:
                return False
        elif a < b:
            return False
    return True
