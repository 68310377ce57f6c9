"""Command-line interface: build, query, verify, bench.

Exit codes: 0 success, 1 verification mismatch, 2 malformed input or
parameters, 3 a series whose canonical form is too long.
"""

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from .engine import ENGINES, naive_query
from .errors import CanonicalTooLong, FrechetRangeError, IndexFormatError, InvalidSeries
from .reductions import StabInstance, solve_range_via_frechet, solve_stabbing_via_frechet
from .series import canonicalize
from .storage import load_index, parse_record, read_dataset, save_index
from .workloads import random_box, random_instance, random_point

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_TOO_LONG = 0, 1, 2, 3


class Mismatch(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("check"))
        self.report = report


def _emit(obj, fh=None):
    print(json.dumps(obj, sort_keys=True), file=fh or sys.stdout)


def cmd_build(args) -> int:
    series = read_dataset(args.input)
    engine = ENGINES[args.engine]
    idx = engine(series, args.rho, args.tq, args.backend, args.ts)
    save_index(idx, args.out)
    summary = {"n": len(idx), "t_s": idx.t_s, "t_q": idx.t_q, "rho": idx.rho,
               "engine": args.engine, "backend": args.backend}
    summary.update(idx.stats())
    _emit(summary)
    return EXIT_OK


def _answer(idx, rec):
    try:
        return {"query_id": rec.id, "matches": sorted(idx.query(rec))}
    except CanonicalTooLong as e:
        return {"query_id": rec.id, "matches": [], "error": str(e)}


def cmd_query(args) -> int:
    idx = load_index(args.index)
    with open(args.queries, encoding="utf-8") as fh:
        recs = [parse_record(line, n) for n, line in enumerate(fh, start=1) if line.strip()]
    # the index is read-only after build, so threads can share it
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        for res in pool.map(lambda r: _answer(idx, r), recs):
            _emit(res)
    return EXIT_OK


def _series_json(series):
    return [{"id": s.id, "values": list(s.values)} for s in series]


def check_engines(series, q, rho, t_q, check):
    """Compare every engine/backend against the linear scan; raise Mismatch."""
    expected = naive_query(series, q, rho)
    for name, engine in sorted(ENGINES.items()):
        for backend in ("naive", "tree"):
            got = engine(series, rho, t_q, backend).query(q)
            if got != expected:
                raise Mismatch({
                    "check": check, "engine": name, "backend": backend,
                    "rho": rho, "t_q": t_q, "series": _series_json(series),
                    "query": list(q), "expected": sorted(expected), "got": sorted(got),
                })


def _dataset_queries(series, t_q, rng, extra=10):
    out = []
    for s in series:
        try:
            canonicalize(s, t_q)
        except CanonicalTooLong:
            continue
        out.append(list(s.values))
    lo = min((min(s.values) for s in series), default=0.0)
    hi = max((max(s.values) for s in series), default=1.0)
    for _ in range(extra):
        out.append([rng.uniform(lo, hi) for _ in range(rng.randint(2, t_q))])
    return out


def verify_dataset(series, rho, t_q, rng):
    if not series:
        return 0
    queries = _dataset_queries(series, t_q, rng)
    expected = [naive_query(series, q, rho) for q in queries]
    for name, engine in sorted(ENGINES.items()):
        for backend in ("naive", "tree"):
            idx = engine(series, rho, t_q, backend)
            for q, exp in zip(queries, expected):
                got = idx.query(q)
                if got != exp:
                    raise Mismatch({
                        "check": "dataset", "engine": name, "backend": backend,
                        "rho": rho, "t_q": t_q, "series": _series_json(series),
                        "query": q, "expected": sorted(exp), "got": sorted(got),
                    })
    return len(queries)


def verify_random(trials, rng):
    for _ in range(trials):
        series, q, rho, t_q = random_instance(rng)
        check_engines(series, q, rho, t_q, "random")
    return trials


def verify_reductions(trials, rng, max_n=20):
    for _ in range(trials):
        dim = rng.randint(1, 3)
        grid = rng.random() < 0.5
        boxes = {f"R{i}": random_box(rng, dim, grid) for i in range(rng.randint(0, max_n))}
        points = [random_point(rng, dim, grid) for _ in range(3)]
        engine = rng.choice(sorted(ENGINES))
        backend = rng.choice(("naive", "tree"))
        inst = StabInstance(dim, boxes, points)
        got = solve_stabbing_via_frechet(inst, engine, backend)
        want = [{k for k, b in boxes.items() if _inside(p, b)} for p in points]
        if got != want:
            raise Mismatch({"check": "stabbing-reduction", "engine": engine, "backend": backend,
                            "boxes": boxes, "points": points,
                            "expected": [sorted(w) for w in want], "got": [sorted(g) for g in got]})
        pts = {f"p{i}": random_point(rng, dim, grid) for i in range(rng.randint(0, max_n))}
        qboxes = [random_box(rng, dim, grid) for _ in range(3)]
        got = solve_range_via_frechet(pts, qboxes, engine, backend)
        want = [{k for k, p in pts.items() if _inside(p, b)} for b in qboxes]
        if got != want:
            raise Mismatch({"check": "range-reduction", "engine": engine, "backend": backend,
                            "points": pts, "boxes": qboxes,
                            "expected": [sorted(w) for w in want], "got": [sorted(g) for g in got]})
    return trials


def _inside(p, box):
    return all(lo <= x <= hi for x, (lo, hi) in zip(p, box))


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    series = read_dataset(args.input) if args.input else []
    try:
        n = verify_dataset(series, args.rho, args.tq, rng)
        _emit({"check": "dataset", "cases": n, "status": "pass"})
        n = verify_random(args.trials, rng)
        _emit({"check": "random", "cases": n, "status": "pass"})
        n = verify_reductions(args.trials, rng)
        _emit({"check": "reductions", "cases": n, "status": "pass"})
    except Mismatch as m:
        _emit({"status": "fail", "counterexample": m.report})
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run_bench
    run_bench(
        n_list=args.n, t_q=args.tq, t_s=args.ts, rho=args.rho, backends=args.backends,
        seed=args.seed, out_csv=args.out_csv, n_queries=args.queries,
        naive_queries=args.naive_queries, figure=args.figure,
    )
    return EXIT_OK


def _int_list(text):
    try:
        vals = [int(float(x)) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"expected non-negative integers, got {text!r}")
    return vals


def _backend_list(text):
    vals = [x for x in text.split(",") if x]
    bad = [v for v in vals if v not in ("naive", "tree")]
    if bad or not vals:
        raise argparse.ArgumentTypeError(f"unknown backends {bad or text!r}")
    return vals


def _radius(text):
    v = float(text)
    if not (0 <= v < float("inf")):
        raise argparse.ArgumentTypeError(f"expected a finite radius >= 0, got {text!r}")
    return v


def _complexity(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"complexity must be >= 2, got {v}")
    return v


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frechet-range", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build and save an index from a JSON-lines dataset")
    b.add_argument("--input", required=True)
    b.add_argument("--rho", type=_radius, required=True)
    b.add_argument("--tq", type=_complexity, required=True)
    b.add_argument("--ts", type=_complexity, default=None,
                   help="stored complexity (default: longest canonical series)")
    b.add_argument("--engine", choices=sorted(ENGINES), default="stab")
    b.add_argument("--backend", choices=("naive", "tree"), default="tree")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer JSON-lines queries against a saved index")
    q.add_argument("--index", required=True)
    q.add_argument("--queries", required=True)
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="check the engines against the linear scan")
    v.add_argument("--input", default=None)
    v.add_argument("--rho", type=_radius, default=1.0)
    v.add_argument("--tq", type=_complexity, default=4)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("bench", help="time builds and queries on synthetic data")
    r.add_argument("--n", type=_int_list, default=[1000, 10000])
    r.add_argument("--tq", type=_complexity, default=4)
    r.add_argument("--ts", type=_complexity, default=4)
    r.add_argument("--rho", type=_radius, default=2.0)
    r.add_argument("--backends", type=_backend_list, default=["naive", "tree"])
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--queries", type=int, default=50)
    r.add_argument("--naive-queries", type=int, default=3,
                   help="queries timed for the linear scan (it is slow)")
    r.add_argument("--out-csv", required=True)
    r.add_argument("--figure", default=None, help="PNG path (default: next to the CSV)")
    r.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CanonicalTooLong as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TOO_LONG
    except (InvalidSeries, IndexFormatError, FrechetRangeError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
