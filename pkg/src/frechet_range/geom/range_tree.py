"""Orthogonal range reporting: report every stored point inside a query box.

``naive``  vectorized linear scan.
``tree``   multi-level range tree: a balanced tree over the points sorted by
           the first coordinate, each node carrying a range tree on the
           remaining coordinates; the last coordinate is a sorted array.
           Nodes with at most ``leaf_size`` points are scanned directly and
           each coordinate's trees live in flat arrays.
"""

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch, DuplicateId
from ._batch import canonical_nodes, gather, lookup, node_key, pow2_at_least
from .rect import Rect

BACKENDS = ("naive", "tree")
LEAF_SIZE = 128


@dataclass
class _Level:
    """All balanced trees on one coordinate, stored as flat arrays.

    Group ``g`` holds rows ``rows[off[g]:off[g]+cnt[g]]`` sorted by the
    coordinate and is viewed as a heap with ``size[g]`` leaves over those
    positions.  ``skey`` is ``g * stride + rank`` per entry, where ``rank``
    is the value's position among the distinct coordinate values, so one
    ``searchsorted`` locates a value range in many groups at once.  Nodes
    covering more than ``leaf_size`` positions map through ``child_key``
    (sorted ``(g << 32) | node``) to a group on the next level; smaller
    nodes are scanned directly."""

    skey: np.ndarray
    stride: int
    rows: np.ndarray
    off: np.ndarray
    cnt: np.ndarray
    size: np.ndarray
    child_key: np.ndarray
    child_ref: np.ndarray


def _node_span(node, size):
    """Leaf-position range [start, end) of heap ``node`` in heaps of ``size``."""
    # frexp exponents are exact floor(log2) + 1 for integers
    e = np.frexp(size)[1] - np.frexp(node)[1]
    start = (node << e) - size
    return start, start + (np.int64(1) << e)


def _build_level(grp, rows, rank, stride, n_groups, last, leaf_size):
    skey = grp * stride + rank[rows]
    order = np.argsort(skey, kind="stable")
    grp, rows, skey = grp[order], rows[order], skey[order]
    off = np.searchsorted(grp, np.arange(n_groups))
    cnt = np.diff(np.r_[off, len(rows)])
    size = pow2_at_least(cnt)
    empty = np.empty(0, dtype=np.int64)
    if last:
        return _Level(skey, stride, rows.astype(np.int32), off, cnt, size, empty, empty), empty, empty, 0
    pos = np.arange(len(rows)) - off[grp]
    leaf = size[grp] + pos
    gsize, gcnt = size[grp], cnt[grp]
    depth = int(leaf.max()).bit_length() if len(leaf) else 0
    keys, members = [], []
    # one ancestor depth at a time keeps temporaries linear in the rows
    for shift in range(depth):
        anc = leaf >> shift
        ok = anc > 0
        start, end = _node_span(np.where(ok, anc, 1), gsize)
        ok &= (np.minimum(end, gcnt) - start) > leaf_size
        if not ok.any():
            continue
        keys.append(node_key(grp[ok], anc[ok]))
        members.append(rows[ok])
    stored = rows.astype(np.int32)
    if not keys:
        return _Level(skey, stride, stored, off, cnt, size, empty, empty), empty, empty, 0
    ck, crow = np.concatenate(keys), np.concatenate(members)
    order = np.argsort(ck, kind="stable")
    ck, crow = ck[order], crow[order]
    first = np.ones(len(ck), dtype=bool)
    first[1:] = ck[1:] != ck[:-1]
    n_child = int(first.sum())
    ref = np.arange(n_child, dtype=np.int64)
    next_grp = np.cumsum(first) - 1
    level = _Level(skey, stride, stored, off, cnt, size, ck[first], ref)
    return level, next_grp, crow, n_child


class _Tree:
    """Layered range tree, one :class:`_Level` per coordinate."""

    def __init__(self, points, leaf_size):
        self.points = points
        self.leaf_size = leaf_size
        n, d = points.shape
        self.levels = []
        self.distinct = [np.unique(points[:, k]) for k in range(d)]
        grp = np.zeros(n, dtype=np.int64)
        rows = np.arange(n, dtype=np.int64)
        n_groups = 1
        for k in range(d):
            u = self.distinct[k]
            rank = np.searchsorted(u, points[:, k])
            level, grp, rows, n_groups = _build_level(
                grp, rows, rank, len(u) + 1, n_groups, k == d - 1, leaf_size
            )
            self.levels.append(level)
            if not n_groups:
                break

    def _check(self, rows, lo, hi, k):
        if k >= len(lo) or not len(rows):
            return rows
        pts = self.points[rows, k:]
        m = np.all((lo[k:] <= pts) & (pts <= hi[k:]), axis=1)
        return rows[m]

    def query(self, lo, hi):
        out = []
        frontier = np.zeros(1, dtype=np.int64)
        for k, lv in enumerate(self.levels):
            if not len(frontier):
                break
            start, cnt = lv.off[frontier], lv.cnt[frontier]
            u = self.distinct[k]
            base = frontier * lv.stride
            a = np.searchsorted(lv.skey, base + np.searchsorted(u, lo[k])) - start
            b = np.searchsorted(lv.skey, base + np.searchsorted(u, hi[k], side="right")) - start
            live = a < b
            frontier, start, cnt, a, b = frontier[live], start[live], cnt[live], a[live], b[live]
            if not len(frontier):
                break
            if k == len(lo) - 1:
                out.append(lv.rows[gather(start + a, b - a)])
                break
            size = lv.size[frontier]
            node, owner = canonical_nodes(a, b - 1, size)
            s, e = _node_span(node, size[owner])
            e = np.minimum(e, cnt[owner])
            big = (e - s) > self.leaf_size
            small = ~big
            if small.any():
                rows = lv.rows[gather(start[owner[small]] + s[small], (e - s)[small])]
                out.append(self._check(rows, lo, hi, k + 1))
            if big.any():
                idx, ok = lookup(lv.child_key, node_key(frontier[owner[big]], node[big]))
                frontier = lv.child_ref[idx[ok]]
            else:
                frontier = frontier[:0]
        return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


class RangeIndex:
    def __init__(self, points, ids, backend="naive", leaf_size=None):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        leaf_size = LEAF_SIZE if leaf_size is None else max(1, int(leaf_size))
        points = np.asarray(points, dtype=float)
        ids = list(ids)
        if points.ndim != 2 or points.shape[0] != len(ids):
            raise DimensionMismatch("points/ids disagree in shape")
        if len(set(ids)) != len(ids):
            raise DuplicateId("point identifiers must be unique")
        self.points, self.ids, self.backend = points, ids, backend
        self.dim = points.shape[1]
        self._tree = None
        if backend == "tree" and len(ids):
            self._tree = _Tree(points, leaf_size)

    def __len__(self):
        return len(self.ids)

    def query_rows(self, rect: Rect) -> np.ndarray:
        lo = np.asarray(rect.lower, dtype=float)
        hi = np.asarray(rect.upper, dtype=float)
        if lo.shape != (self.dim,):
            raise DimensionMismatch(f"box of dimension {lo.size} vs index dimension {self.dim}")
        if not len(self.ids) or np.any(lo > hi):
            return np.empty(0, dtype=np.intp)
        if self._tree is None:
            m = np.all((lo <= self.points) & (self.points <= hi), axis=1)
            return np.flatnonzero(m)
        return np.sort(self._tree.query(lo, hi))

    def query(self, rect: Rect) -> set:
        return {self.ids[r] for r in self.query_rows(rect)}


def range_build(points: Iterable[Tuple[Sequence[float], Hashable]], backend="naive", dim=None, **kw) -> RangeIndex:
    points = list(points)
    if not points:
        d = dim or 0
        return RangeIndex(np.empty((0, d)), [], backend, **kw)
    dims = {len(p) for p, _ in points}
    if len(dims) != 1 or (dim is not None and dims != {dim}):
        raise DimensionMismatch(f"mixed point dimensions {sorted(dims)}")
    return RangeIndex(np.array([p for p, _ in points], dtype=float), [i for _, i in points], backend, **kw)


def range_query(idx: RangeIndex, rect: Rect) -> set:
    if not len(idx) and idx.dim == 0:
        return set()
    return idx.query(rect)
