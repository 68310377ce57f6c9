from dataclasses import dataclass
from typing import Sequence, Tuple

from ..errors import DimensionMismatch


@dataclass(frozen=True)
class Rect:
    """Product of closed intervals; bounds may be -inf/+inf."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lower)
        hi = tuple(float(x) for x in self.upper)
        if len(lo) != len(hi):
            raise DimensionMismatch("lower and upper differ in dimension")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def empty(self) -> bool:
        return any(a > b for a, b in zip(self.lower, self.upper))

    def contains(self, point: Sequence[float]) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatch(f"point of dimension {len(point)} vs rect {self.dim}")
        return all(a <= x <= b for a, x, b in zip(self.lower, point, self.upper))
