"""Query engines: rectangle stabbing over query space, point storage over
stored-series space, and the linear-scan baseline."""

import math
from typing import Dict, Sequence, Tuple

import numpy as np

from .cells import atoms_for, enumerate_valid, fb_requirements, rectangle_bounds
from .errors import DuplicateId
from .geom.range_tree import RangeIndex
from .geom.rect import Rect
from .geom.stab import StabIndex
from .oracle import decide_frechet
from .predicates import FBProfile, fb_profile, fb_profiles
from .series import Shape, TimeSeries, alternation_core, canonicalize, values_of

SHAPES = (Shape.M, Shape.W)


def check_rho(rho) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho < 0:
        raise ValueError(f"radius must be a finite non-negative number, got {rho}")
    return rho


def _as_series(x, default_id="q") -> TimeSeries:
    if isinstance(x, TimeSeries):
        return x
    return TimeSeries(default_id, values_of(x))


def _canonical_store(series, t_s=None):
    """Canonicalize a dataset to a common complexity.

    Returns (ids, values (n, t_s) array, shapes list, t_s)."""
    series = [_as_series(s) for s in series]
    ids = [s.id for s in series]
    if len(set(ids)) != len(ids):
        raise DuplicateId("series identifiers must be unique")
    if t_s is None:
        t_s = max([2] + [max(2, len(alternation_core(s.values))) for s in series])
    canon = [canonicalize(s, t_s) for s in series]
    values = np.array([c.values for c in canon], dtype=float).reshape(len(canon), t_s)
    return ids, values, [c.shape for c in canon], t_s


def _swap(p: FBProfile) -> FBProfile:
    return FBProfile(p.backward, p.forward)


class FrechetIndex:
    """Stored series become boxes in query space, one family per valid cell
    sequence and query shape; a query stabs the families whose
    forward/backward requirements its own numbers meet."""

    def __init__(self, series, rho, t_q, backend="naive", t_s=None):
        self.rho = check_rho(rho)
        self.t_q = int(t_q)
        if self.t_q < 2:
            raise ValueError("t_q must be >= 2")
        self.backend = backend
        self.ids, values, shapes, self.t_s = _canonical_store(series, t_s)
        self.sequences = enumerate_valid(self.t_q, self.t_s)
        self.requirements = [fb_requirements(C) for C in self.sequences]
        self.structures: Dict[Tuple[Shape, int, Shape], StabIndex] = {}
        shapes = np.array([s is Shape.M for s in shapes], dtype=bool)
        for bucket in SHAPES:
            rows = np.flatnonzero(shapes if bucket is Shape.M else ~shapes)
            vals = values[rows] if bucket is Shape.M else -values[rows]
            atoms = atoms_for(vals, self.rho)
            for c, C in enumerate(self.sequences):
                for qs in SHAPES:
                    lo, hi = rectangle_bounds(C, vals, self.rho, qs, atoms)
                    keep = ~np.any(lo > hi, axis=1)
                    self.structures[bucket, c, qs] = StabIndex(
                        lo[keep], hi[keep], rows[keep].tolist(), backend
                    )

    def __len__(self):
        return len(self.ids)

    def stats(self) -> dict:
        return {
            "structures": len(self.structures),
            "sequences": len(self.sequences),
            "rectangles": sum(len(s) for s in self.structures.values()),
        }

    def query_rows(self, q) -> set:
        cq = canonicalize(_as_series(q), self.t_q)
        prof = fb_profile(cq.values, self.rho)
        found = set()
        for bucket in SHAPES:
            if bucket is Shape.M:
                qv, qs, p = cq.values, cq.shape, prof
            else:
                qv, qs, p = tuple(-v for v in cq.values), cq.shape.flipped(), _swap(prof)
            for c, req in enumerate(self.requirements):
                idx = self.structures[bucket, c, qs]
                if len(idx) and req.satisfied_by(p):
                    found.update(idx.ids[r] for r in idx.query_rows(qv))
        return found

    def query(self, q) -> set:
        return {self.ids[r] for r in self.query_rows(q)}


class PointStoreIndex:
    """Stored series become points in their own value space.  For every query
    shape, every valid cell sequence of F(s, q) and every stored shape, a
    range index keeps the series whose forward/backward numbers meet the
    sequence's requirements; a query turns each sequence into a box."""

    def __init__(self, series, rho, t_q, backend="naive", t_s=None):
        self.rho = check_rho(rho)
        self.t_q = int(t_q)
        if self.t_q < 2:
            raise ValueError("t_q must be >= 2")
        self.backend = backend
        self.ids, values, shapes, self.t_s = _canonical_store(series, t_s)
        n = len(self.ids)
        self.sequences = enumerate_valid(self.t_s, self.t_q)
        self.requirements = [fb_requirements(C) for C in self.sequences]
        fwd, bwd = fb_profiles(np.asarray(values, dtype=float).reshape(n, self.t_s), self.rho)
        is_m = np.array([s is Shape.M for s in shapes], dtype=bool)
        self.structures: Dict[Tuple[Shape, Shape, int], RangeIndex] = {}
        shared = {}
        for qs in SHAPES:
            # frame in which the query is M-shaped
            sign = 1.0 if qs is Shape.M else -1.0
            f, b = (fwd, bwd) if qs is Shape.M else (bwd, fwd)
            frame_m = is_m if qs is Shape.M else ~is_m
            for stored in SHAPES:
                rows = np.flatnonzero(frame_m if stored is Shape.M else ~frame_m)
                fi, bi = f[rows, 1:-1], b[rows, 1:-1]
                for c, req in enumerate(self.requirements):
                    ok = np.all(fi >= np.array(req.forward_req, dtype=int), axis=1) & np.all(
                        bi >= np.array(req.backward_req, dtype=int), axis=1
                    )
                    sel = rows[ok]
                    # different sequences often keep the same series; share their index
                    key = (sign, sel.tobytes())
                    if key not in shared:
                        shared[key] = RangeIndex(sign * values[sel], sel.tolist(), backend)
                    self.structures[qs, stored, c] = shared[key]

    def __len__(self):
        return len(self.ids)

    def stats(self) -> dict:
        return {
            "structures": len(self.structures),
            "sequences": len(self.sequences),
            "points": sum(len(s) for s in self.structures.values()),
            "distinct_structures": len({id(s) for s in self.structures.values()}),
        }

    def query_rows(self, q) -> set:
        cq = canonicalize(_as_series(q), self.t_q)
        qs = cq.shape
        frame = cq.values if qs is Shape.M else tuple(-v for v in cq.values)
        atoms = atoms_for(frame, self.rho)
        found = set()
        for stored in SHAPES:
            for c, C in enumerate(self.sequences):
                idx = self.structures[qs, stored, c]
                if not len(idx):
                    continue
                lo, hi = rectangle_bounds(C, frame, self.rho, stored, atoms)
                if any(a > b for a, b in zip(lo, hi)):
                    continue
                found.update(idx.ids[r] for r in idx.query_rows(Rect(lo, hi)))
        return found

    def query(self, q) -> set:
        return {self.ids[r] for r in self.query_rows(q)}


def build_frechet_index(S, rho, t_q, backend="naive", t_s=None) -> FrechetIndex:
    return FrechetIndex(S, rho, t_q, backend, t_s)


def query_frechet_index(idx: FrechetIndex, q) -> set:
    return idx.query(q)


def build_point_store(S, rho, t_q, backend="naive", t_s=None) -> PointStoreIndex:
    return PointStoreIndex(S, rho, t_q, backend, t_s)


def query_point_store(idx: PointStoreIndex, q) -> set:
    return idx.query(q)


def naive_query(S: Sequence, q, rho) -> set:
    """Linear scan deciding every stored series."""
    rho = check_rho(rho)
    qv = values_of(q)
    return {s.id for s in map(_as_series, S) if decide_frechet(qv, s.values, rho)}


ENGINES = {"stab": FrechetIndex, "pointstore": PointStoreIndex}
