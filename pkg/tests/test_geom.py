import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from frechet_range.errors import DimensionMismatch, DuplicateId
from frechet_range.geom import RangeIndex, Rect, StabIndex, range_build, range_query, stab_build, stab_query

coord = st.integers(0, 6).map(float)


def test_empty_indexes():
    assert stab_query(stab_build([], "tree"), (0.5,)) == set()
    assert range_query(range_build([], "tree", dim=2), Rect((0, 0), (1, 1))) == set()


def test_closed_boundaries():
    for backend in ("naive", "tree"):
        idx = stab_build([(Rect((0, 0), (1, 1)), "A")], backend)
        assert stab_query(idx, (0.5, 0.5)) == {"A"}
        assert stab_query(idx, (1.0, 0.0)) == {"A"}
        assert stab_query(idx, (1.0000001, 0.0)) == set()
        pts = range_build([((0.5, 0.5), "p"), ((1.0, 1.0), "q")], backend)
        assert range_query(pts, Rect((0, 0), (1, 1))) == {"p", "q"}


def test_unbounded_sides():
    lower = np.array([[-math.inf, 0.0], [2.0, -math.inf]])
    upper = np.array([[1.0, math.inf], [math.inf, 3.0]])
    for backend in ("naive", "tree"):
        idx = StabIndex(lower, upper, ["a", "b"], backend, leaf_size=1)
        assert idx.query((-1e300, 5.0)) == {"a"}
        assert idx.query((5.0, -7.0)) == {"b"}


def test_errors():
    with pytest.raises(DuplicateId):
        StabIndex([[0.0]], [[1.0]], ["x"]).__class__([[0.0], [1.0]], [[1.0], [2.0]], ["x", "x"])
    with pytest.raises(DimensionMismatch):
        stab_build([(Rect((0,), (1,)), "a"), (Rect((0, 0), (1, 1)), "b")])
    idx = stab_build([(Rect((0, 0), (1, 1)), "a")], "tree")
    with pytest.raises(DimensionMismatch):
        idx.query((0.5,))
    with pytest.raises(ValueError):
        StabIndex([[2.0]], [[1.0]], ["x"])
    with pytest.raises(DuplicateId):
        RangeIndex([[0.0], [1.0]], ["x", "x"])


boxes = st.lists(st.tuples(st.lists(st.tuples(coord, coord), min_size=3, max_size=3),
                           st.lists(st.booleans(), min_size=6, max_size=6)), max_size=60)


@settings(max_examples=150)
@given(boxes, st.lists(st.lists(st.integers(-1, 7).map(lambda x: x / 1.0), min_size=3, max_size=3), min_size=1, max_size=10),
       st.sampled_from([1, 2, 4, 32]))
def test_stab_tree_agrees_with_scan(raw, points, leaf):
    lower, upper = [], []
    for sides, open_flags in raw:
        lo = [min(a, b) for a, b in sides]
        hi = [max(a, b) for a, b in sides]
        lo = [-math.inf if f else x for x, f in zip(lo, open_flags[:3])]
        hi = [math.inf if f else x for x, f in zip(hi, open_flags[3:])]
        lower.append(lo); upper.append(hi)
    d = 3
    lower = np.array(lower).reshape(-1, d); upper = np.array(upper).reshape(-1, d)
    ids = list(range(len(lower)))
    naive = StabIndex(lower, upper, ids, "naive")
    tree = StabIndex(lower, upper, ids, "tree", leaf_size=leaf)
    for p in points:
        assert tree.query_rows(p).tolist() == naive.query_rows(p).tolist()


@settings(max_examples=150)
@given(st.lists(st.lists(coord, min_size=4, max_size=4), max_size=80),
       st.lists(st.tuples(st.lists(coord, min_size=4, max_size=4), st.lists(coord, min_size=4, max_size=4)),
                min_size=1, max_size=8),
       st.sampled_from([1, 2, 4, 128]))
def test_range_tree_agrees_with_scan(points, queries, leaf):
    pts = np.array(points).reshape(-1, 4)
    ids = list(range(len(pts)))
    naive = RangeIndex(pts, ids, "naive")
    tree = RangeIndex(pts, ids, "tree", leaf_size=leaf)
    for a, b in queries:
        r = Rect(tuple(min(x, y) for x, y in zip(a, b)), tuple(max(x, y) for x, y in zip(a, b)))
        assert tree.query_rows(r).tolist() == naive.query_rows(r).tolist()


def test_empty_query_box_reports_nothing():
    idx = RangeIndex([[0.0, 0.0]], ["a"], "tree")
    assert idx.query(Rect((1.0, 0.0), (0.0, 1.0))) == set()
