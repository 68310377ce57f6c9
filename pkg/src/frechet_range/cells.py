"""Valid cell sequences, the predicates they induce, their forward/backward
requirements, and the per-sequence rectangles used by both query engines."""

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Tuple

import numpy as np

from .errors import ComplexityTooLarge, DimensionMismatch, ShapeViolation
from .geom.rect import Rect
from .exact import add_down, add_up, diff_gt
from .predicates import PredicateId, monotone_probe_intervals, vertex_intervals
from .series import Shape, has_shape, values_of

DEFAULT_SEQ_CAP = 10**6


def sequence_cap() -> int:
    env = os.environ.get("FRECHET_STAB_SEQ_CAP")
    return int(env) if env else DEFAULT_SEQ_CAP


@dataclass(frozen=True)
class CellSequence:
    """Monotone staircase of cells ``(i, j)`` from (1, 1) to ``grid``.

    ``i`` indexes edges of the first curve, ``j`` edges of the second.
    """

    cells: Tuple[Tuple[int, int], ...]
    grid: Tuple[int, int]

    def __post_init__(self):
        cells = tuple((int(i), int(j)) for i, j in self.cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "grid", tuple(self.grid))
        if cells[0] != (1, 1) or cells[-1] != self.grid:
            raise ValueError(f"cell sequence must run from (1, 1) to {self.grid}")
        for (a, b), (c, d) in zip(cells, cells[1:]):
            if (c - a, d - b) not in ((1, 0), (0, 1)):
                raise ValueError(f"invalid step {(a, b)} -> {(c, d)}")

    @property
    def steps(self) -> str:
        """'U' for an i-step, 'R' for a j-step."""
        return "".join("U" if c > a else "R" for (a, _), (c, _) in zip(self.cells, self.cells[1:]))

    @classmethod
    def from_steps(cls, steps: str, grid) -> "CellSequence":
        i = j = 1
        cells = [(1, 1)]
        for ch in steps:
            if ch == "U":
                i += 1
            else:
                j += 1
            cells.append((i, j))
        return cls(tuple(cells), tuple(grid))


@dataclass(frozen=True)
class FBRequirement:
    """f_i(C), b_i(C) for i = 2 .. t-1 (stored at offset i - 2)."""

    forward_req: Tuple[int, ...]
    backward_req: Tuple[int, ...]

    def f(self, i: int) -> int:
        return self.forward_req[i - 2]

    def b(self, i: int) -> int:
        return self.backward_req[i - 2]

    def satisfied_by(self, profile) -> bool:
        return all(
            profile.f(i) >= self.f(i) and profile.b(i) >= self.b(i)
            for i in range(2, len(self.forward_req) + 2)
        )


def count_valid(t_q: int, t_s: int) -> int:
    return math.comb(t_q + t_s - 4, t_q - 2)


@lru_cache(maxsize=None)
def _enumerate(t_q, t_s):
    n_steps, n_up = t_q + t_s - 4, t_q - 2
    grid = (t_q - 1, t_s - 1)
    strings = []
    for ups in combinations(range(n_steps), n_up):
        chars = ["R"] * n_steps
        for u in ups:
            chars[u] = "U"
        strings.append("".join(chars))
    strings.sort()
    return tuple(CellSequence.from_steps(st, grid) for st in strings)


def enumerate_valid(t_q: int, t_s: int, cap: int = None) -> Tuple[CellSequence, ...]:
    """All valid sequences for a (t_q - 1) x (t_s - 1) grid, sorted by step string."""
    if t_q < 2 or t_s < 2:
        raise ValueError("complexities must be >= 2")
    cap = sequence_cap() if cap is None else cap
    n = count_valid(t_q, t_s)
    if n > cap:
        raise ComplexityTooLarge(f"{n} valid cell sequences exceed the cap of {cap}")
    return _enumerate(t_q, t_s)


@lru_cache(maxsize=None)
def induced_predicates(C: CellSequence) -> Tuple[PredicateId, ...]:
    cells = set(C.cells)
    tq, ts = C.grid[0] + 1, C.grid[1] + 1
    out = {PredicateId("P1", (1, 1)), PredicateId("P2", (tq, ts))}
    cols, rows = {}, {}
    for i, j in C.cells:
        cols.setdefault(i, []).append(j)
        rows.setdefault(j, []).append(i)
    for i, j in C.cells:
        if (i, j - 1) in cells:
            out.add(PredicateId("P3", (i, j)))
            out.update(PredicateId("P5", (i, j, k)) for k in cols[i] if k >= j)
        if (i - 1, j) in cells:
            out.add(PredicateId("P4", (i, j)))
            out.update(PredicateId("P6", (i, l, j)) for l in rows[j] if l > i)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def fb_requirements(C: CellSequence) -> FBRequirement:
    """Forward/backward requirements, assuming the second curve is M-shaped
    (odd edges non-decreasing)."""
    tq = C.grid[0] + 1
    row_end = {}
    for i, j in C.cells:
        row_end[j] = max(row_end.get(j, i), i)
    cells = set(C.cells)
    fwd, bwd = [], []
    for i in range(2, tq):
        f = b = i
        for j in row_end:
            if (i - 1, j) in cells and (i, j) in cells:
                if j % 2 == 1:
                    f = row_end[j]
                else:
                    b = row_end[j]
        fwd.append(f)
        bwd.append(b)
    return FBRequirement(tuple(fwd), tuple(bwd))


def _rect(C: CellSequence, other, rho, probe_shape: Shape) -> Rect:
    other = values_of(other)
    tp = C.grid[0] + 1
    if len(other) != C.grid[1] + 1:
        raise DimensionMismatch(f"series of complexity {len(other)} does not fit grid {C.grid}")
    if not has_shape(other, Shape.M):
        raise ShapeViolation("rectangles are built against M-shaped series only")
    lower = [-math.inf] * tp
    upper = [math.inf] * tp
    for p in induced_predicates(C):
        if p.kind == "P6":
            continue
        if p.kind == "P5":
            cs = monotone_probe_intervals(*p.indices, other, rho, probe_shape)
        else:
            cs = vertex_intervals(p, other, rho, probe_shape, t_q=tp)
        for c in cs:
            d = c.vertex_index - 1
            lower[d] = max(lower[d], c.lower)
            upper[d] = min(upper[d], c.upper)
    return Rect(tuple(lower), tuple(upper))


def build_rectangle(C: CellSequence, s, rho, query_shape: Shape) -> Rect:
    """Query-space rectangle of an M-shaped stored series for sequence ``C``.

    A query of shape ``query_shape`` lies in it and meets ``fb_requirements(C)``
    iff ``C`` is feasible for the pair.
    """
    return _rect(C, s, rho, query_shape)


def query_rectangle(C: CellSequence, q, rho, stored_shape: Shape) -> Rect:
    """Rectangle over stored-vertex coordinates with the roles exchanged:
    ``C`` lives on the grid of F(s, q) and ``q`` must be M-shaped."""
    return _rect(C, q, rho, stored_shape)


@lru_cache(maxsize=None)
def _template(C: CellSequence, probe_shape: Shape):
    """Per probe dimension, the sets of atom keys bounding it from below and
    above.  Atoms (see ``_Atoms``) are shared by many predicates, so each
    rectangle reduces to a few max/min operations."""
    tp = C.grid[0] + 1
    ts = C.grid[1] + 1
    lows = [set() for _ in range(tp)]
    highs = [set() for _ in range(tp)]

    def p3(i, j):
        if probe_shape.edge_increasing(i):
            highs[i - 1].add(("up", j))
            lows[i].add(("lo", j))
        else:
            lows[i - 1].add(("lo", j))
            highs[i].add(("up", j))

    for p in induced_predicates(C):
        idx = p.indices
        if p.kind == "P1":
            lows[0].add(("lo", 1))
            highs[0].add(("up", 1))
        elif p.kind == "P2":
            lows[tp - 1].add(("lo", ts))
            highs[tp - 1].add(("up", ts))
        elif p.kind == "P3":
            p3(*idx)
        elif p.kind == "P4":
            i, j = idx
            lows[i - 1].add(("p4lo", j))
            highs[i - 1].add(("p4up", j))
        elif p.kind == "P5":
            i, j, k = idx
            p3(i, j)
            p3(i, k)
            if j != k:
                highs[i - 1].add(("c2up", j, k))
                lows[i - 1].add(("c3lo", j, k))
                lows[i].add(("c2lo", j, k))
                highs[i].add(("c3up", j, k))
    return tuple(tuple(sorted(x)) for x in lows), tuple(tuple(sorted(x)) for x in highs)


class _Atoms(dict):
    """Lazily computed bounds shared by rectangle constraints.

    Values are floats when ``others`` is one series, arrays for a matrix of
    series (one per row).  ``lo``/``up`` are the exactly rounded
    ``s_j - rho`` / ``s_j + rho``; ``p4*`` bound a vertex near edge j;
    ``c2*``/``c3*`` are the case (ii)/(iii) monotonicity bounds, +-inf where
    the case does not hold."""

    def __init__(self, others, rho):
        super().__init__()
        self.vec = isinstance(others, np.ndarray) and others.ndim == 2
        self.others = others
        self.rho = rho

    def _v(self, j):
        return self.others[:, j - 1] if self.vec else self.others[j - 1]

    def _where(self, cond, a, b):
        return np.where(cond, a, b) if self.vec else (a if cond else b)

    def __missing__(self, key):
        kind, *ix = key
        rho = self.rho
        if kind == "lo":
            val = add_up(self._v(ix[0]), -rho)
        elif kind == "up":
            val = add_down(self._v(ix[0]), rho)
        elif kind == "p4lo":
            j = ix[0]
            val = np.minimum(self["lo", j], self["lo", j + 1]) if self.vec else min(self["lo", j], self["lo", j + 1])
        elif kind == "p4up":
            j = ix[0]
            val = np.maximum(self["up", j], self["up", j + 1]) if self.vec else max(self["up", j], self["up", j + 1])
        else:
            j, k = ix
            sj, sk = self._v(j), self._v(k)
            if kind in ("c2up", "c2lo"):
                cond = diff_gt(sk, sj, 2.0 * rho)
                val = self._where(cond, self["up", j], math.inf) if kind == "c2up" else self._where(cond, self["lo", k], -math.inf)
            else:
                cond = diff_gt(sj, sk, 2.0 * rho)
                val = self._where(cond, self["lo", j], -math.inf) if kind == "c3lo" else self._where(cond, self["up", k], math.inf)
        self[key] = val
        return val


def atoms_for(others, rho) -> _Atoms:
    if isinstance(others, np.ndarray) and others.ndim == 2:
        return _Atoms(others, rho)
    return _Atoms(values_of(others), rho)


def rectangle_bounds(C: CellSequence, others, rho, probe_shape: Shape, atoms=None):
    """Rectangle bounds for ``C`` against every row of ``others``.

    ``others`` is an (n, t) array (returns (n, t_probe) arrays) or a single
    series (returns two lists).  Rows are not checked for shape.  Pass the
    same ``atoms`` across sequences to share work.
    """
    atoms = atoms if atoms is not None else atoms_for(others, rho)
    lows, highs = _template(C, Shape(probe_shape))
    if atoms.vec:
        n = atoms.others.shape[0]
        lower = np.empty((n, len(lows)))
        upper = np.empty((n, len(lows)))
        for d, (lk, hk) in enumerate(zip(lows, highs)):
            lower[:, d] = _reduce(np.maximum, [atoms[k] for k in lk], -np.inf)
            upper[:, d] = _reduce(np.minimum, [atoms[k] for k in hk], np.inf)
        return lower, upper
    lower = [max([atoms[k] for k in lk], default=-math.inf) for lk in lows]
    upper = [min([atoms[k] for k in hk], default=math.inf) for hk in highs]
    return lower, upper


def _reduce(op, arrays, empty):
    if not arrays:
        return empty
    out = arrays[0]
    for a in arrays[1:]:
        out = op(out, a)
    return out
