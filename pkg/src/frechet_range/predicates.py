"""Predicates P1-P6 on a pair of series, their interval forms, and the
forward/backward numbers of a single series.

Interval constraints are expressed on the vertices of the *probe* curve (the
first argument ``q`` of a predicate) in terms of the other curve ``s``.  The
functions are role-agnostic: the point-store engine calls them with the
roles of query and stored series exchanged.
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import IndexOutOfRange, UnsupportedKind
from .exact import add_down, add_up, diff_gt
from .oracle import _cmp, _within, decide_symbolic
from .series import Shape, values_of

KINDS = ("P1", "P2", "P3", "P4", "P5", "P6")


@dataclass(frozen=True, order=True)
class PredicateId:
    """A predicate with its indices.

    P1 and P2 carry the endpoint pair ``(i, j)``: ``(1, 1)`` resp.
    ``(t_q, t_s)``.  P3/P4 carry ``(i, j)``, P5 ``(i, j, k)`` and P6
    ``(i, l, j)``, all 1-based.
    """

    kind: str
    indices: Tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedKind(f"unknown predicate kind {self.kind!r}")
        object.__setattr__(self, "indices", tuple(int(x) for x in self.indices))

    def __str__(self):
        return f"{self.kind}({', '.join(map(str, self.indices))})"


@dataclass(frozen=True)
class IntervalConstraint:
    vertex_index: int
    lower: float
    upper: float

    @property
    def empty(self) -> bool:
        return bool(self.lower > self.upper)

    def contains(self, x) -> bool:
        return bool(self.lower <= x <= self.upper)


@dataclass(frozen=True)
class FBProfile:
    forward: Tuple[int, ...]
    backward: Tuple[int, ...]

    def f(self, i: int) -> int:
        return self.forward[i - 1]

    def b(self, i: int) -> int:
        return self.backward[i - 1]


def _check(cond, p):
    if not cond:
        raise IndexOutOfRange(f"{p} out of range")


def _validate(p: PredicateId, tq: int, ts: int):
    idx = p.indices
    if p.kind in ("P1", "P2"):
        want = (1, 1) if p.kind == "P1" else (tq, ts)
        _check(idx in ((), want), p)
    elif p.kind == "P3":
        _check(len(idx) == 2 and 1 <= idx[0] < tq and 1 <= idx[1] <= ts, p)
    elif p.kind == "P4":
        _check(len(idx) == 2 and 1 <= idx[0] <= tq and 1 <= idx[1] < ts, p)
    elif p.kind == "P5":
        i, j, k = idx if len(idx) == 3 else (0, 0, 0)
        _check(1 <= i < tq and 1 <= j <= ts and 1 <= k <= ts, p)
    else:
        i, l, j = idx if len(idx) == 3 else (0, 0, 0)
        _check(1 <= i <= tq and 1 <= l <= tq and 1 <= j < ts, p)


def _sym(v, k=0):
    return (v, k)


def _segment_hits(a, b, v, rho):
    """Whether some point of segment a-b lies within rho of v."""
    lo, hi = (a, b) if a <= b else (b, a)
    return _cmp(_sym(lo), _sym(v, 1), rho) <= 0 and _cmp(_sym(hi), _sym(v, -1), rho) >= 0


def _ordered_hits(a, b, v1, v2, rho):
    """Points p1 not after p2 on a->b with |p1 - v1| <= rho, |p2 - v2| <= rho."""
    if not (_segment_hits(a, b, v1, rho) and _segment_hits(a, b, v2, rho)):
        return False
    if a == b:
        return True
    if a < b:
        # smallest feasible p1 must not exceed largest feasible p2
        lows = [_sym(a), _sym(v1, -1)]
        highs = [_sym(b), _sym(v2, 1)]
        return all(_cmp(x, y, rho) <= 0 for x in lows for y in highs)
    highs = [_sym(a), _sym(v1, 1)]
    lows = [_sym(b), _sym(v2, -1)]
    return all(_cmp(x, y, rho) >= 0 for x in highs for y in lows)


def eval_predicate(p: PredicateId, q, s, rho) -> bool:
    """Truth value of ``p`` on (q, s) from its existential definition."""
    q, s = values_of(q), values_of(s)
    _validate(p, len(q), len(s))
    idx = p.indices
    if p.kind == "P1":
        return _within(_sym(q[0]), _sym(s[0]), rho)
    if p.kind == "P2":
        return _within(_sym(q[-1]), _sym(s[-1]), rho)
    if p.kind == "P3":
        i, j = idx
        return _segment_hits(q[i - 1], q[i], s[j - 1], rho)
    if p.kind == "P4":
        i, j = idx
        return _segment_hits(s[j - 1], s[j], q[i - 1], rho)
    if p.kind == "P5":
        i, j, k = idx
        return _ordered_hits(q[i - 1], q[i], s[j - 1], s[k - 1], rho)
    i, l, j = idx
    return _ordered_hits(s[j - 1], s[j], q[i - 1], q[l - 1], rho)


# --- interval forms -------------------------------------------------------
# ``s`` may be a 1-D sequence or an (n, t_s) array; bounds are then arrays.


def _col(s, j):
    return s[..., j - 1] if isinstance(s, np.ndarray) else s[j - 1]


def _up(x, rho):
    return add_down(x, rho)


def _lo(x, rho):
    return add_up(x, -rho)


def _p3(i, sj, rho, increasing):
    if increasing:
        return [IntervalConstraint(i, -math.inf, _up(sj, rho)),
                IntervalConstraint(i + 1, _lo(sj, rho), math.inf)]
    return [IntervalConstraint(i, _lo(sj, rho), math.inf),
            IntervalConstraint(i + 1, -math.inf, _up(sj, rho))]


def interval_constraints(p: PredicateId, s, rho, query_shape: Shape, t_q=None):
    """Vectorizable core of :func:`vertex_intervals` (no validation)."""
    idx = p.indices
    if p.kind == "P1":
        s1 = _col(s, 1)
        return [IntervalConstraint(1, _lo(s1, rho), _up(s1, rho))]
    if p.kind == "P2":
        vq = idx[0] if idx else t_q
        if vq is None:
            raise ValueError("P2 needs the probe complexity")
        st = s[..., -1] if isinstance(s, np.ndarray) else s[-1]
        return [IntervalConstraint(vq, _lo(st, rho), _up(st, rho))]
    if p.kind == "P3":
        i, j = idx
        return _p3(i, _col(s, j), rho, Shape(query_shape).edge_increasing(i))
    if p.kind == "P4":
        i, j = idx
        a, b = _col(s, j), _col(s, j + 1)
        return [IntervalConstraint(i, _lo(np.minimum(a, b), rho), _up(np.maximum(a, b), rho))]
    raise UnsupportedKind(f"{p.kind} has no single-interval form")


def _scalar(cs):
    return [IntervalConstraint(c.vertex_index, float(c.lower), float(c.upper)) for c in cs]


def vertex_intervals(p: PredicateId, s, rho, query_shape: Shape, t_q=None) -> List[IntervalConstraint]:
    """Constraints on probe vertices equivalent to P1-P4 for a probe of the
    given shape.  Bounds are rounded outward-exactly: a float vertex satisfies
    a constraint iff it satisfies the real-valued one."""
    if p.kind in ("P5", "P6"):
        raise UnsupportedKind(f"{p.kind} has no single-interval form")
    s = values_of(s)
    idx, ts = p.indices, len(s)
    if p.kind == "P2" and not idx and t_q is None:
        raise ValueError("P2 needs the probe complexity")
    if p.kind == "P3":
        _check(len(idx) == 2 and idx[0] >= 1 and 1 <= idx[1] <= ts
               and (t_q is None or idx[0] < t_q), p)
    elif p.kind == "P4":
        _check(len(idx) == 2 and idx[0] >= 1 and 1 <= idx[1] < ts
               and (t_q is None or idx[0] <= t_q), p)
    return _scalar(interval_constraints(p, s, rho, query_shape, t_q))


def p5_extra(i, j, k, s, rho):
    """Case (ii)/(iii) constraints of the monotone-in-probe predicate.

    Returns four constraints whose bounds are +-inf where the case does not
    apply (vectorizes over rows of ``s``)."""
    sj, sk = _col(s, j), _col(s, k)
    two = 2.0 * rho
    up_case = diff_gt(sk, sj, two)
    down_case = diff_gt(sj, sk, two)
    return [
        IntervalConstraint(i, np.where(down_case, _lo(sj, rho), -np.inf),
                           np.where(up_case, _up(sj, rho), np.inf)),
        IntervalConstraint(i + 1, np.where(up_case, _lo(sk, rho), -np.inf),
                           np.where(down_case, _up(sk, rho), np.inf)),
    ]


def monotone_probe_intervals(i, j, k, s, rho, query_shape: Shape) -> List[IntervalConstraint]:
    """Constraints equivalent to P5(i, j, k) for a probe of the given shape."""
    s = values_of(s)
    if not (1 <= j <= len(s) and 1 <= k <= len(s) and i >= 1):
        raise IndexOutOfRange(f"P5({i}, {j}, {k}) out of range")
    out = vertex_intervals(PredicateId("P3", (i, j)), s, rho, query_shape)
    out += vertex_intervals(PredicateId("P3", (i, k)), s, rho, query_shape)
    for c in _scalar(p5_extra(i, j, k, s, rho)):
        if c.lower != -math.inf or c.upper != math.inf:
            out.append(c)
    return out


# --- forward / backward numbers -------------------------------------------


def _fb_holds(q, i, k, rho, forward):
    """Defining condition of the forward (backward) number at (i, k), 0-based."""
    d = -1 if forward else 1
    a, b = (q[i], d), (q[k], -d)
    c = _cmp(a, b, rho)
    if (forward and c > 0) or (not forward and c < 0):
        return False
    if k == i:
        return True
    return decide_symbolic([(v, 0) for v in q[i:k + 1]], [a, b], rho)


def fb_profile(q, rho) -> FBProfile:
    """Forward and backward numbers f_i, b_i (1-based) of ``q`` at ``rho``."""
    q = values_of(q)
    t = len(q)
    fwd, bwd = [], []
    for out, forward in ((fwd, True), (bwd, False)):
        for i in range(t):
            k = i
            while k + 1 < t and _fb_holds(q, i, k + 1, rho, forward):
                k += 1
            out.append(k + 1)
    return FBProfile(tuple(fwd), tuple(bwd))


def fb_profiles(values, rho) -> Tuple[np.ndarray, np.ndarray]:
    """Forward and backward numbers of every row of a (n, t) array at once.

    Uses the pairwise form of the defining condition: the forward number
    at ``i`` is the largest ``k`` with ``q_x - q_y <= 2 rho`` for all
    ``i <= x < y <= k`` (mirrored for backward).  Returns two (n, t) int
    arrays, 1-based like :func:`fb_profile`."""
    v = np.asarray(values, dtype=float)
    n, t = v.shape
    two_rho = 2.0 * float(rho)
    out = []
    for sign in (1.0, -1.0):
        w = sign * v
        res = np.empty((n, t), dtype=int)
        for i in range(t):
            reach = np.full(n, i + 1)
            alive = np.ones(n, dtype=bool)
            run = w[:, i].copy()
            for k in range(i + 1, t):
                alive &= ~diff_gt(run, w[:, k], two_rho)
                reach[alive] = k + 1
                run = np.maximum(run, w[:, k])
            res[:, i] = reach
        out.append(res)
    return out[0], out[1]


def forward_bundle_holds(i, l, j, q, s, rho, profile: FBProfile = None) -> bool:
    """All P6(x, y, j) for i <= x < y <= l, via f/b numbers plus P4."""
    q, s = values_of(q), values_of(s)
    if not (1 <= i < l <= len(q) and 1 <= j < len(s)):
        raise IndexOutOfRange(f"forward_bundle_holds({i}, {l}, {j}) out of range")
    profile = profile or fb_profile(q, rho)
    reach = profile.f(i) if s[j - 1] <= s[j] else profile.b(i)
    if reach < l:
        return False
    return all(eval_predicate(PredicateId("P4", (x, j)), q, s, rho) for x in range(i, l + 1))
