import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from frechet_range.cells import CellSequence, enumerate_valid
from frechet_range.errors import DimensionMismatch
from frechet_range.oracle import decide_frechet, feasible_for_sequence
from frechet_range.series import mirror
from oracles import frechet_leq, rand_values

EX3_Q = [8.3, 4.3, 14.8, 10.8, 20.5, 16.5]
EX3_S = [7.6, 5.2, 14, 11.4, 19.6, 17.4]
EX3_SHAT = [7.4, 5, 13.6, 11.2, 20, 17.8]

series = st.lists(st.integers(0, 8).map(float), min_size=2, max_size=6)
radius = st.integers(0, 4).map(float)


def test_stabbing_example_pair():
    assert decide_frechet(EX3_Q, EX3_S, 1.0)
    assert not decide_frechet(EX3_Q, EX3_SHAT, 1.0)
    assert frechet_leq(EX3_Q, EX3_S, 1.0) and not frechet_leq(EX3_Q, EX3_SHAT, 1.0)


@pytest.mark.parametrize("q, s, rho, want", [
    ([0, 10], [0, 10], 0.0, True),
    ([0, 10], [1, 9], 1.0, True),
    ([0, 10], [1, 9], 0.999, False),
    ([0, 10, 0], [0, 0], 9.999, False),
    ([0, 10, 0], [0, 0], 10.0, True),
    # backtracking is forbidden: 0 -> 10 -> 5 -> 10 against 0 -> 10
    ([0, 10, 5, 10], [0, 10], 2.5, True),
    ([0, 10, 5, 10], [0, 10], 2.4999, False),
])
def test_small_hand_cases(q, s, rho, want):
    assert decide_frechet(q, s, rho) is want


@given(series, series, radius)
def test_matches_rational_reference(q, s, rho):
    assert decide_frechet(q, s, rho) == frechet_leq(q, s, rho)


@given(series, series, radius)
def test_symmetric_and_mirror_invariant(q, s, rho):
    d = decide_frechet(q, s, rho)
    assert decide_frechet(s, q, rho) == d
    assert decide_frechet(mirror(q), mirror(s), rho) == d


@given(series, series, radius)
def test_monotone_in_radius(q, s, rho):
    if decide_frechet(q, s, rho):
        assert decide_frechet(q, s, rho + 0.5)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_float_instances_match_reference(seed):
    rng = random.Random(seed)
    q = rand_values(rng, rng.randint(2, 6), False, 0, 20)
    s = rand_values(rng, rng.randint(2, 6), False, 0, 20)
    rho = rng.uniform(0.01, 8)
    assert decide_frechet(q, s, rho) == frechet_leq(q, s, rho)


@given(series, series, radius)
def test_decision_is_union_over_sequences(q, s, rho):
    # a feasible path exists iff some valid staircase of cells is feasible
    any_feasible = any(
        feasible_for_sequence(C, q, s, rho) for C in enumerate_valid(len(q), len(s))
    )
    assert any_feasible == decide_frechet(q, s, rho)


def test_sequence_grid_must_fit():
    C = CellSequence.from_steps("R", (1, 2))
    with pytest.raises(DimensionMismatch):
        feasible_for_sequence(C, [0, 1], [0, 1], 1.0)


def test_example_diagonal_sequence_is_feasible():
    # alternating right/up staircase through (i, i)
    C = CellSequence.from_steps("RU" * 4, (5, 5))
    assert feasible_for_sequence(C, EX3_Q, EX3_S, 1.0)
    assert not feasible_for_sequence(C, EX3_Q, EX3_SHAT, 1.0)
