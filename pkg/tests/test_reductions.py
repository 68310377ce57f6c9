import random

import pytest

from frechet_range.errors import OutOfUnitBox
from frechet_range.oracle import decide_frechet
from frechet_range.reductions import (
    StabInstance, point_to_series, rect_to_series, rescale_to_unit, solve_range_via_frechet,
    solve_stabbing_via_frechet,
)
from frechet_range.workloads import random_box, random_point

R = ((0.2, 0.6), (0.4, 1.0), (0.4, 0.6))
R_HAT = ((0.0, 0.4), (0.2, 0.6), (0.8, 1.0))
P = (0.3, 0.8, 0.5)


def test_printed_vectors():
    assert rect_to_series(R).values == (7.6, 5.2, 14.0, 11.4, 19.6, 17.4)
    assert rect_to_series(R_HAT).values == (7.4, 5.0, 13.6, 11.2, 20.0, 17.8)
    assert point_to_series(P).values == (8.3, 4.3, 14.8, 10.8, 20.5, 16.5)


def test_example_instance():
    assert decide_frechet(point_to_series(P), rect_to_series(R), 1.0)
    assert not decide_frechet(point_to_series(P), rect_to_series(R_HAT), 1.0)
    inst = StabInstance(3, {"R": R, "R_hat": R_HAT}, [P])
    for engine in ("stab", "pointstore"):
        assert solve_stabbing_via_frechet(inst, engine, "tree") == [{"R"}]
    assert solve_range_via_frechet({"p": P}, [R, R_HAT]) == [{"p"}, set()]


def test_outside_unit_cube():
    with pytest.raises(OutOfUnitBox):
        point_to_series((1.5,))
    with pytest.raises(OutOfUnitBox):
        rect_to_series(((-0.1, 0.5),))


def test_rescaling_keeps_containment():
    pts, rects = rescale_to_unit([(10.0, -4.0), (30.0, 6.0)], [((10.0, 20.0), (-4.0, 0.0))])
    assert pts[0] == (0.0, 0.0) and pts[1] == (1.0, 1.0)
    assert rects[0] == ((0.0, 0.5), (0.0, 0.4))


def _inside(p, box):
    return all(lo <= x <= hi for x, (lo, hi) in zip(p, box))


@pytest.mark.parametrize("seed", range(5))
def test_round_trips_match_containment(seed):
    rng = random.Random(seed)
    for _ in range(10):
        dim, grid = rng.randint(1, 3), rng.random() < 0.5
        boxes = {f"b{i}": random_box(rng, dim, grid) for i in range(rng.randint(0, 15))}
        points = [random_point(rng, dim, grid) for _ in range(4)]
        got = solve_stabbing_via_frechet(StabInstance(dim, boxes, points), "stab", "tree")
        assert got == [{k for k, b in boxes.items() if _inside(p, b)} for p in points]
        pts = {f"p{i}": random_point(rng, dim, grid) for i in range(rng.randint(0, 15))}
        qboxes = [random_box(rng, dim, grid) for _ in range(3)]
        got = solve_range_via_frechet(pts, qboxes, "pointstore", "tree")
        assert got == [{k for k, p in pts.items() if _inside(p, b)} for b in qboxes]
