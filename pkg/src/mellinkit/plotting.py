"""Matplotlib figures of Newton polygons (file output only, Agg backend)."""

from __future__ import annotations

from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polygons import NewtonPolygon, PolygonKind  # noqa: E402
from .render import MARGIN, rays  # noqa: E402


def plot_polygon(ax, N: NewtonPolygon, title: str = "") -> None:
    pts = N.vertices()
    us = [float(p[0]) for p in pts]
    vs = [float(p[1]) for p in pts]
    umin, umax = min(us) - MARGIN, max(us) + MARGIN
    vmin, vmax = min(vs) - MARGIN, max(vs) + MARGIN
    ax.plot(us, vs, "-o", color="#1f4e79", lw=2, ms=4)
    for (su, sv), (du, dv) in rays(N, pts):
        end = (umin, float(sv)) if du < 0 else (float(su), vmax)
        ax.plot([float(su), end[0]], [float(sv), end[1]], "--", color="#1f4e79", lw=1)
    ax.set_xlim(umin, umax)
    ax.set_ylim(vmin, vmax)
    ax.set_aspect("equal")
    ax.grid(True, color="#dddddd", lw=0.5)
    label = {PolygonKind.GLOBAL: ("deg alpha_r", "r"),
             PolygonKind.DIFFERENCE: ("i", "v(a_i)"),
             PolygonKind.LOCAL: ("i", "val a_i")}[N.kind]
    ax.set_xlabel(label[0])
    ax.set_ylabel(label[1])
    ax.set_title(title or N.kind.value, fontsize=10)


def save_figure(path: str, panels: Sequence[Tuple[str, NewtonPolygon]]) -> None:
    fig, axes = plt.subplots(1, len(panels), figsize=(4 * len(panels), 4), squeeze=False)
    for ax, (title, N) in zip(axes[0], panels):
        plot_polygon(ax, N, title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
