"""Figure rendering for the CLI report paths."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .boundary import BoundaryCurve, EXTERIOR


def plot_curves(curves: list[BoundaryCurve], path: str, title: str = "") -> None:
    """Draw the oriented boundary curves, exterior and interior apart."""
    fig, ax = plt.subplots(figsize=(5, 5))
    seen = set()
    for curve in curves:
        pts = curve.vertices
        closed_r = list(pts[:, 0]) + [pts[0, 0]]
        closed_c = list(pts[:, 1]) + [pts[0, 1]]
        color = "C0" if curve.kind == EXTERIOR else "C1"
        label = curve.kind if curve.kind not in seen else None
        seen.add(curve.kind)
        ax.plot(closed_c, closed_r, color=color, label=label)
    ax.invert_yaxis()  # row axis points down the page
    ax.set_aspect("equal")
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    if title:
        ax.set_title(title)
    if seen:
        ax.legend(loc="best", fontsize="small")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def plot_embedding(names: list[str], coords, path: str, title: str = "") -> None:
    """Scatter the 2-d embedding with one label per point."""
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.scatter(coords[:, 0], coords[:, 1], s=18, color="C0")
    for name, (x, y) in zip(names, coords):
        ax.annotate(name, (x, y), fontsize=7, xytext=(2, 2),
                    textcoords="offset points")
    ax.set_xlabel("mds 1")
    ax.set_ylabel("mds 2")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
