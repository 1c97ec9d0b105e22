"""Figures for the CLI report paths. Files only, never a window."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .asymptotics import ScalingReport  # noqa: E402
from .qsearch import QTableEntry  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_qtable(entries: list[QTableEntry], path: str | Path) -> Path:
    """Q(n, c) against c, one line per n, with the trivial ceiling c dotted."""
    by_n: dict[int, list[tuple[int, int]]] = {}
    for e in entries:
        if e.q is not None:
            by_n.setdefault(e.n, []).append((e.c, e.q))
    fig, ax = plt.subplots(figsize=(6, 4))
    top = 1
    for n, pts in sorted(by_n.items()):
        pts.sort()
        cs = [c for c, _ in pts]
        qs = [q for _, q in pts]
        ax.plot(cs, qs, marker="o", label=f"n={n}")
        top = max(top, max(cs))
    ax.plot([1, top], [1, top], ls=":", color="grey", lw=1, label="q = c")
    ax.set_xlabel("chromatic number c")
    ax.set_ylabel("Q(n, c)")
    ax.set_xticks(range(1, top + 1))
    ax.legend(fontsize=8, ncol=2)
    return _save(fig, path)


def plot_scaling(report: ScalingReport, path: str | Path) -> Path:
    """Log-log colors used against n, with the fitted slope and the reference slope."""
    ns = [s.n for s in report.samples]
    counts = [s.colors_used for s in report.samples]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ns, counts, "o", label="greedy MIS coloring")
    # both guide lines pass through the first sample
    n0, c0 = ns[0], counts[0]
    xs = [ns[0], ns[-1]]
    ax.loglog(xs, [c0 * (x / n0) ** report.fitted_exponent for x in xs],
              label=f"fit, slope {report.fitted_exponent:.3f}")
    ax.loglog(xs, [c0 * (x / n0) ** report.reference_exponent for x in xs], ls="--",
              label=f"reference, slope {report.reference_exponent:.3f}")
    ax.set_xlabel("n")
    ax.set_ylabel("colors used")
    ax.set_title(f"{report.family}, q = {report.q}")
    ax.legend(fontsize=8)
    return _save(fig, path)
