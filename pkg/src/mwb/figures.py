"""Render quivers to PNG files and mutation-class censuses to CSV."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .quiver import Quiver
from .seeds import MutationClassReport


def _layout(quiver: Quiver, rows=None) -> dict[int, tuple[float, float]]:
    """Vertex coordinates: by word row when row hints exist, else a circle."""
    if rows:
        pos = {}
        counts: dict[int, int] = {}
        for k in range(1, quiver.n + 1):
            row = rows[k - 1]
            counts[row] = counts.get(row, 0) + 1
            # positions grow right to left inside a row
            pos[k] = (-float(counts[row]), -float(row))
        return pos
    import math

    return {
        k: (
            math.cos(2 * math.pi * (k - 1) / quiver.n),
            math.sin(2 * math.pi * (k - 1) / quiver.n),
        )
        for k in range(1, quiver.n + 1)
    }


def render_quiver_png(
    quiver: Quiver,
    path: str | Path,
    rows=None,
    labels=None,
    title: str | None = None,
) -> str:
    """Draw the quiver and write it to path; returns the path written.

    Frozen vertices are drawn as squares, mutable ones as circles; arrow
    multiplicities above one appear as a midpoint badge.
    """
    pos = _layout(quiver, rows)
    fig, ax = plt.subplots(figsize=(max(4.0, quiver.n * 0.9), max(3.0, quiver.n * 0.6)))
    for a, b, m in quiver.arrow_list():
        xa, ya = pos[a]
        xb, yb = pos[b]
        ax.annotate(
            "",
            xy=(xb, yb),
            xytext=(xa, ya),
            arrowprops=dict(
                arrowstyle="-|>",
                color="#444444",
                shrinkA=16,
                shrinkB=16,
                connectionstyle="arc3,rad=0.12",
            ),
        )
        if m > 1:
            mx, my = (xa + xb) / 2, (ya + yb) / 2
            ax.text(
                mx, my, str(m),
                ha="center", va="center", fontsize=9, color="#aa2222",
                bbox=dict(boxstyle="circle,pad=0.15", fc="white", ec="#aa2222"),
            )
    for k, (x, y) in pos.items():
        frozen = k in quiver.frozen
        ax.scatter(
            [x], [y],
            s=650,
            marker="s" if frozen else "o",
            facecolor="#dfe8f5" if frozen else "white",
            edgecolor="black",
            zorder=3,
        )
        text = labels[k - 1] if labels else str(k)
        ax.text(x, y, text, ha="center", va="center", fontsize=9, zorder=4)
    if title:
        ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    path = Path(path)
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def write_census_csv(report: MutationClassReport, path: str | Path) -> str:
    """Write one row per cluster of the census, variables sorted and joined."""
    path = Path(path)
    clusters = sorted(tuple(sorted(c)) for c in report.clusters)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cluster", "size", "variables"])
        for idx, cluster in enumerate(clusters, start=1):
            writer.writerow([idx, len(cluster), " | ".join(cluster)])
        writer.writerow([])
        writer.writerow(["verdict", report.verdict, ""])
        writer.writerow(["distinct_variables", len(report.variables), ""])
        writer.writerow(["distinct_mutable_variables", len(report.mutable_variables), ""])
    return str(path)
