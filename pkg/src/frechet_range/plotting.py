"""Figures for benchmark reports."""

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 7,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.right": False,
    "axes.spines.top": False,
}


def figsize(width_in=6.5, rows=1):
    return (width_in, width_in * GOLDEN * 0.5 * rows)


def plot_bench(rows, path):
    """Build time and mean query time against n, one line per engine/backend."""
    series = defaultdict(list)
    for r in rows:
        series[f"{r['engine']}/{r['backend']}"].append(r)
    with plt.rc_context(STYLE):
        fig, (ax_b, ax_q) = plt.subplots(1, 2, figsize=figsize())
        for label, rs in sorted(series.items()):
            rs = sorted(rs, key=lambda r: int(r["n"]))
            ns = [int(r["n"]) for r in rs]
            ax_q.plot(ns, [float(r["mean_query_us"]) for r in rs], marker="o", ms=3, label=label)
            if label.startswith("scan"):
                continue
            ax_b.plot(ns, [float(r["build_ms"]) for r in rs], marker="o", ms=3, label=label)
        for ax, ylabel in ((ax_b, "build [ms]"), (ax_q, "mean query [us]")):
            ax.set_xscale("log")
            ax.set_yscale("log")
            ax.set_xlabel("n (stored series)")
            ax.set_ylabel(ylabel)
        ax_q.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path
