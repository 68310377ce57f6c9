"""Rectangle stabbing: report every stored box containing a query point.

Two backends share one interface:

``naive``  vectorized linear scan over all boxes.
``tree``   segment tree on the first coordinate whose nodes hold nested
           segment trees for the remaining coordinates.  Node subsets of at
           most ``leaf_size`` boxes are scanned directly.  Each coordinate's
           trees live in flat arrays so that build and query do a fixed
           number of vectorized passes per coordinate.
"""

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatch, DuplicateId
from ._batch import canonical_nodes, gather, lookup, node_key, pow2_at_least
from .rect import Rect

BACKENDS = ("naive", "tree")
LEAF_SIZE = 32


@dataclass
class _Level:
    """All segment trees on one coordinate, stored as flat arrays.

    Tree ``g`` has ``kcnt[g]`` distinct endpoints and ``size[g]`` leaves;
    elementary slot 2t+1 is its t-th endpoint, slot 2t the open gap below.
    Endpoints are stored as ``g * stride + rank`` in ``keys`` (rank among all
    distinct endpoint values of the coordinate), sorted, starting at
    ``koff[g]``.  ``child_key`` (sorted ``(g << 32) | node``) maps
    every non-empty node to ``child_ref``: a tree id on the next level when
    >= 0, else leaf ``~ref`` of this level, whose rows are checked on the
    remaining coordinates."""

    keys: np.ndarray
    stride: int
    koff: np.ndarray
    kcnt: np.ndarray
    size: np.ndarray
    child_key: np.ndarray
    child_ref: np.ndarray
    leaf_off: np.ndarray
    leaf_cnt: np.ndarray
    leaf_rows: np.ndarray


def _build_level(grp, rows, rank_lo, rank_hi, stride, n_groups, last, leaf_size):
    """Trees on one coordinate for the (group, row) membership pairs.

    Returns the level and the membership pairs of the next level."""
    m = len(rows)
    gg = np.concatenate([grp, grp])
    vals = gg * stride + np.concatenate([rank_lo[rows], rank_hi[rows]])
    order = np.argsort(vals, kind="stable")
    sv, sg = vals[order], gg[order]
    new = np.ones(len(sv), dtype=bool)
    new[1:] = sv[1:] != sv[:-1]
    keys = sv[new]
    koff = np.searchsorted(sg[new], np.arange(n_groups))
    kcnt = np.diff(np.r_[koff, len(keys)])
    rank = np.empty(len(sv), dtype=np.int64)
    rank[order] = np.cumsum(new) - 1
    t = rank - koff[gg]
    slot_lo, slot_hi = 2 * t[:m] + 1, 2 * t[m:] + 1
    size = pow2_at_least(2 * kcnt + 1)
    node, owner = canonical_nodes(slot_lo, slot_hi, size[grp])
    ck = node_key(grp[owner], node)
    order = np.argsort(ck, kind="stable")
    ck, crow = ck[order], rows[owner[order]]
    first = np.ones(len(ck), dtype=bool)
    first[1:] = ck[1:] != ck[:-1]
    starts = np.flatnonzero(first)
    counts = np.diff(np.r_[starts, len(ck)])
    is_leaf = np.full(len(starts), True) if last else counts <= leaf_size
    ref = np.empty(len(starts), dtype=np.int64)
    n_leaf = int(is_leaf.sum())
    ref[is_leaf] = ~np.arange(n_leaf)
    ref[~is_leaf] = np.arange(len(starts) - n_leaf)
    member_leaf = np.repeat(is_leaf, counts)
    leaf_rows = crow[member_leaf]
    leaf_cnt = counts[is_leaf]
    leaf_off = np.r_[0, np.cumsum(leaf_cnt)[:-1]].astype(np.int64)
    next_grp = np.repeat(ref, counts)[~member_leaf]
    next_rows = crow[~member_leaf]
    level = _Level(keys, stride, koff, kcnt, size, ck[first], ref, leaf_off, leaf_cnt, leaf_rows)
    return level, next_grp, next_rows, len(starts) - n_leaf


class _Tree:
    """Nested segment trees, one :class:`_Level` per coordinate."""

    def __init__(self, lower, upper, leaf_size):
        self.lower, self.upper = lower, upper
        n, d = lower.shape
        self.levels = []
        self.root_leaf = n <= leaf_size
        if self.root_leaf:
            return
        self.distinct = [np.unique(np.concatenate([lower[:, k], upper[:, k]])) for k in range(d)]
        grp = np.zeros(n, dtype=np.int64)
        rows = np.arange(n, dtype=np.int64)
        n_groups = 1
        for k in range(d):
            u = self.distinct[k]
            level, grp, rows, n_groups = _build_level(
                grp, rows, np.searchsorted(u, lower[:, k]), np.searchsorted(u, upper[:, k]),
                len(u) + 1, n_groups, k == d - 1, leaf_size,
            )
            self.levels.append(level)
            if not n_groups:
                break

    def _check(self, rows, p, k):
        if k >= len(p) or not len(rows):
            return rows
        x = p[k:]
        m = np.all((self.lower[rows, k:] <= x) & (x <= self.upper[rows, k:]), axis=1)
        return rows[m]

    def query(self, p):
        if self.root_leaf:
            return self._check(np.arange(len(self.lower)), p, 0)
        out = []
        frontier = np.zeros(1, dtype=np.int64)
        for k, lv in enumerate(self.levels):
            if not len(frontier):
                break
            u = self.distinct[k]
            r = int(np.searchsorted(u, p[k]))
            start, cnt = lv.koff[frontier], lv.kcnt[frontier]
            target = frontier * lv.stride + r
            t = np.searchsorted(lv.keys, target) - start
            hit = t < cnt
            if r < len(u) and u[r] == p[k]:
                hit[hit] = lv.keys[(start + t)[hit]] == target[hit]
            else:
                hit[:] = False
            v = lv.size[frontier] + 2 * t + hit
            depth = int(v.max()).bit_length()
            anc = v[:, None] >> np.arange(depth)[None, :]
            grp = np.broadcast_to(frontier[:, None], anc.shape)
            keep = anc > 0
            idx, ok = lookup(lv.child_key, node_key(grp[keep], anc[keep]))
            ref = lv.child_ref[idx[ok]]
            leaves = ~ref[ref < 0]
            if len(leaves):
                rows = lv.leaf_rows[gather(lv.leaf_off[leaves], lv.leaf_cnt[leaves])]
                out.append(self._check(rows, p, k + 1))
            frontier = ref[ref >= 0]
        return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


class StabIndex:
    def __init__(self, lower, upper, ids, backend="naive", leaf_size=None):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        leaf_size = LEAF_SIZE if leaf_size is None else max(1, int(leaf_size))
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        ids = list(ids)
        if lower.ndim != 2 or lower.shape != upper.shape or lower.shape[0] != len(ids):
            raise DimensionMismatch("lower/upper/ids disagree in shape")
        if len(set(ids)) != len(ids):
            raise DuplicateId("rectangle identifiers must be unique")
        if np.any(lower > upper):
            raise ValueError("empty rectangles cannot be stored")
        self.lower, self.upper, self.ids = lower, upper, ids
        self.backend = backend
        self.dim = lower.shape[1]
        self._tree = None
        if backend == "tree" and len(ids):
            self._tree = _Tree(lower, upper, leaf_size)

    def __len__(self):
        return len(self.ids)

    def query_rows(self, point) -> np.ndarray:
        p = np.asarray(point, dtype=float)
        if p.shape != (self.dim,):
            raise DimensionMismatch(f"point of dimension {p.size} vs index dimension {self.dim}")
        if not len(self.ids):
            return np.empty(0, dtype=np.intp)
        if self._tree is None:
            m = np.all((self.lower <= p) & (p <= self.upper), axis=1)
            return np.flatnonzero(m)
        return np.sort(self._tree.query(p))

    def query(self, point) -> set:
        return {self.ids[r] for r in self.query_rows(point)}


def stab_build(rects: Iterable[Tuple[Rect, Hashable]], backend="naive", dim=None, **kw) -> StabIndex:
    rects = list(rects)
    if not rects:
        d = dim or 0
        return StabIndex(np.empty((0, d)), np.empty((0, d)), [], backend, **kw)
    dims = {r.dim for r, _ in rects}
    if len(dims) != 1 or (dim is not None and dims != {dim}):
        raise DimensionMismatch(f"mixed rectangle dimensions {sorted(dims)}")
    lower = np.array([r.lower for r, _ in rects], dtype=float)
    upper = np.array([r.upper for r, _ in rects], dtype=float)
    return StabIndex(lower, upper, [i for _, i in rects], backend, **kw)


def stab_query(idx: StabIndex, point: Sequence[float]) -> set:
    if not len(idx) and idx.dim == 0:
        return set()
    return idx.query(point)
