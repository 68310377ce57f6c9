"""Synthetic benchmark: build and query timings per engine and backend."""

import csv
import logging
import os
import time

from .engine import ENGINES, naive_query
from .workloads import bench_workload

log = logging.getLogger(__name__)

FIELDS = ["engine", "backend", "n", "tq", "ts", "rho", "build_ms", "mean_query_us", "output_size"]
SPEEDUP_TARGET = 10.0
BUILD_BUDGET_MS = 60_000.0


def _time_queries(fn, queries):
    sizes = []
    t0 = time.perf_counter()
    for q in queries:
        sizes.append(len(fn(q)))
    dt = time.perf_counter() - t0
    mean_us = 1e6 * dt / len(queries) if queries else 0.0
    mean_size = sum(sizes) / len(sizes) if sizes else 0.0
    return mean_us, mean_size


def bench_rows(n, t_q, t_s, rho, backends, seed, n_queries, naive_queries):
    series, queries = bench_workload(n, t_q, t_s, n_queries, seed)
    rows = []
    base = {"n": n, "tq": t_q, "ts": t_s, "rho": rho}
    for name, engine in sorted(ENGINES.items()):
        for backend in backends:
            t0 = time.perf_counter()
            idx = engine(series, rho, t_q, backend, t_s)
            build_ms = 1e3 * (time.perf_counter() - t0)
            mean_us, size = _time_queries(idx.query, queries)
            rows.append(dict(base, engine=name, backend=backend, build_ms=round(build_ms, 3),
                             mean_query_us=round(mean_us, 3), output_size=round(size, 3)))
            log.info("n=%d %s/%s build %.0f ms, query %.0f us", n, name, backend, build_ms, mean_us)
    scan = queries[:naive_queries]
    mean_us, size = _time_queries(lambda q: naive_query(series, q, rho), scan)
    rows.append(dict(base, engine="scan", backend="naive", build_ms=0.0,
                     mean_query_us=round(mean_us, 3), output_size=round(size, 3)))
    return rows


def soft_checks(rows):
    """Warnings for the tree speedup and build budget; never raises."""
    warnings = []
    scan = {r["n"]: r["mean_query_us"] for r in rows if r["engine"] == "scan"}
    for r in rows:
        if r["backend"] != "tree":
            continue
        ref = scan.get(r["n"])
        if ref and r["mean_query_us"] * SPEEDUP_TARGET > ref:
            warnings.append(
                f"{r['engine']}/tree at n={r['n']}: {r['mean_query_us']:.0f} us per query is "
                f"less than {SPEEDUP_TARGET:.0f}x faster than the scan ({ref:.0f} us)"
            )
        if r["build_ms"] > BUILD_BUDGET_MS:
            warnings.append(f"{r['engine']}/tree at n={r['n']}: build took {r['build_ms'] / 1e3:.1f} s")
    return warnings


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: r[k] for k in FIELDS})


def run_bench(n_list, t_q, t_s, rho, backends, seed, out_csv, n_queries=50,
              naive_queries=3, figure=None):
    if n_queries < 1 or naive_queries < 0:
        raise ValueError("query counts must be positive")
    rows = []
    for n in n_list:
        rows += bench_rows(n, t_q, t_s, rho, backends, seed, n_queries, naive_queries)
    write_csv(rows, out_csv)
    from .plotting import plot_bench

    figure = figure or os.path.splitext(out_csv)[0] + ".png"
    plot_bench(rows, figure)
    for w in soft_checks(rows):
        log.warning(w)
    return rows, figure
