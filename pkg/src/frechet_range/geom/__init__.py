from .range_tree import RangeIndex, range_build, range_query
from .rect import Rect
from .stab import StabIndex, stab_build, stab_query

__all__ = ["Rect", "StabIndex", "stab_build", "stab_query", "RangeIndex", "range_build", "range_query"]
