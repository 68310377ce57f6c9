"""Seeded generators for verification and benchmark workloads."""

import random
from typing import List, Tuple

import numpy as np

from .series import TimeSeries


def random_values(rng: random.Random, length: int, integer: bool) -> list:
    if integer:
        return [rng.randint(0, 10) for _ in range(length)]
    return [rng.uniform(0.0, 100.0) for _ in range(length)]


def random_instance(rng: random.Random, max_n=30, max_t=6):
    """A small dataset, query and radius.

    Half the instances live on an integer grid with integer radii so that
    ties between vertices and radius offsets are common."""
    t_q = rng.randint(2, max_t)
    t_s = rng.randint(2, max_t)
    integer = rng.random() < 0.5
    n = rng.randint(0, max_n)
    series = [TimeSeries(f"s{i}", random_values(rng, rng.randint(2, t_s), integer)) for i in range(n)]
    q = random_values(rng, rng.randint(2, t_q), integer)
    rho = float(rng.randint(1, 4)) if integer else rng.uniform(0.01, 30.0)
    return series, q, rho, t_q


def random_box(rng: random.Random, dim: int, grid: bool) -> tuple:
    sides = []
    for _ in range(dim):
        if grid:
            a, b = sorted(rng.randint(0, 8) / 8 for _ in range(2))
        else:
            a, b = sorted(rng.random() for _ in range(2))
        sides.append((a, b))
    return tuple(sides)


def random_point(rng: random.Random, dim: int, grid: bool) -> tuple:
    if grid:
        return tuple(rng.randint(0, 8) / 8 for _ in range(dim))
    return tuple(rng.random() for _ in range(dim))


def bench_workload(n: int, t_q: int, t_s: int, n_queries: int, seed: int) -> Tuple[List[TimeSeries], list]:
    """Random zig-zags in [0, 100]; queries are jittered copies of stored series.

    With a small radius most stored series are far from any query, so
    output sizes stay small (low selectivity)."""
    g = np.random.default_rng(seed)
    data = g.uniform(0.0, 100.0, size=(n, t_s))
    series = [TimeSeries(f"s{i}", row.tolist()) for i, row in enumerate(data)]
    queries = []
    for _ in range(n_queries):
        if n:
            base = data[g.integers(n)]
            vals = np.interp(np.linspace(0, t_s - 1, t_q), np.arange(t_s), base)
            vals = vals + g.normal(0.0, 0.5, size=t_q)
        else:
            vals = g.uniform(0.0, 100.0, size=t_q)
        queries.append(vals.tolist())
    return series, queries
