"""Scaling plot for ``cocolat bench``."""
from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def cost_model(n: int, m: int) -> float:
    return n + m * math.log2(max(n, 2))


def plot_bench(rows: Sequence[tuple[int, int, float]], path: str) -> None:
    """Millis against ``n + m log2 n`` on log-log axes, with the fitted ``c * x`` line."""
    xs = [cost_model(n, m) for n, m, _ in rows]
    ys = [ms for _, _, ms in rows]
    c = sum(y / x for x, y in zip(xs, ys)) / len(xs)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(xs, ys, "o", label="measured")
    lo, hi = min(xs), max(xs)
    ax.loglog([lo, hi], [c * lo, c * hi], "--", label=f"{c:.2e} (n + m log n)")
    for (n, m, _), x, y in zip(rows, xs, ys):
        ax.annotate(f"n={n}", (x, y), textcoords="offset points", xytext=(4, -10), fontsize=7)
    ax.set_xlabel("n + m log2 n")
    ax.set_ylabel("pipeline time (ms)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
