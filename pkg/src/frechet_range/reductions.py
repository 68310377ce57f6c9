"""Stabbing and range reporting expressed as Fréchet queries at radius 1.

A box ``[l_1, r_1] x ... x [l_d, r_d]`` in the unit cube maps to the series
``s_{2i-1} = (r_i + 1) + 6i``, ``s_{2i} = (l_i - 1) + 6i`` and a point maps to
``q_{2i-1} = (p_i + 2) + 6i``, ``q_{2i} = (p_i - 2) + 6i``; the point lies in
the box iff the two series are within Fréchet distance 1.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .engine import ENGINES
from .errors import OutOfUnitBox
from .series import TimeSeries

Box = Tuple[Tuple[float, float], ...]


@dataclass
class StabInstance:
    dim: int
    rects: Dict[str, Box] = field(default_factory=dict)
    queries: List[Tuple[float, ...]] = field(default_factory=list)


def _check_unit(values):
    if not all(0.0 <= v <= 1.0 for v in values):
        raise OutOfUnitBox(f"coordinates {tuple(values)} leave [0, 1]")


def rect_to_series(rect: Box, id="R") -> TimeSeries:
    out = []
    for i, (lo, hi) in enumerate(rect, start=1):
        _check_unit((lo, hi))
        if lo > hi:
            raise ValueError(f"empty side [{lo}, {hi}]")
        out += [(hi + 1) + 6 * i, (lo - 1) + 6 * i]
    return TimeSeries(id, out)


def point_to_series(p: Sequence[float], id="p") -> TimeSeries:
    _check_unit(p)
    out = []
    for i, x in enumerate(p, start=1):
        out += [(x + 2) + 6 * i, (x - 2) + 6 * i]
    return TimeSeries(id, out)


def rescale_to_unit(points=(), rects=()):
    """Min-max scale points and boxes (same affine map per axis) into [0, 1]^d."""
    coords = [np.asarray(p, dtype=float) for p in points]
    coords += [np.asarray(r, dtype=float)[:, k] for r in rects for k in (0, 1)]
    if not coords:
        return list(points), list(rects)
    allc = np.vstack(coords)
    lo, hi = allc.min(axis=0), allc.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)

    def f(x):
        return np.clip((np.asarray(x, dtype=float) - lo) / span, 0.0, 1.0)

    new_points = [tuple(f(p)) for p in points]
    new_rects = [tuple(zip(f(np.asarray(r)[:, 0]), f(np.asarray(r)[:, 1]))) for r in rects]
    return new_points, new_rects


def solve_stabbing_via_frechet(inst: StabInstance, engine="stab", backend="naive") -> List[set]:
    """Answer every query point with the ids of the boxes containing it."""
    stored = [rect_to_series(r, id=k) for k, r in inst.rects.items()]
    idx = ENGINES[engine](stored, 1.0, 2 * inst.dim, backend)
    return [idx.query(point_to_series(p)) for p in inst.queries]


def solve_range_via_frechet(points: Dict[str, Sequence[float]], query_rects: Sequence[Box],
                            engine="stab", backend="naive") -> List[set]:
    """Answer every box with the ids of the stored points inside it."""
    if not points:
        return [set() for _ in query_rects]
    dim = len(next(iter(points.values())))
    stored = [point_to_series(p, id=k) for k, p in points.items()]
    idx = ENGINES[engine](stored, 1.0, 2 * dim, backend)
    return [idx.query(rect_to_series(r)) for r in query_rects]
