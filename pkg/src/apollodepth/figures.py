"""Matplotlib figure output for the report path.

Every CLI command that writes delimited data can also drop a rendered
figure next to it; these helpers keep the plotting in one place.  The Agg
backend is forced so the package works headless.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .charts import Image, SectionSample
from .conics import Conic

__all__ = [
    "save_corona_figure",
    "save_dust_figure",
    "save_image_png",
    "save_section_figure",
]


def save_image_png(img: Image, path) -> None:
    """Write a rendered chart as PNG."""
    plt.imsave(path, img.to_array())


def save_section_figure(profile: List[SectionSample], path, x_label: str = "") -> None:
    """Ln(depth) along a vertical section, log-style like the chart cuts."""
    ys = [float(s.y) for s in profile]
    lns = [s.ln_depth if s.ln_depth is not None else float("nan") for s in profile]
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(ys, lns, lw=0.7, color="black")
    ax.set_xlabel(f"y along x = {x_label}" if x_label else "y")
    ax.set_ylabel("ln depth")
    ax.set_title("depth section")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_dust_figure(points: Sequence[Tuple[float, float]], path) -> None:
    """Scatter of packing tricycles in the moduli square (both orderings,
    since (x, y) and (y, x) describe the same tricycle)."""
    xs = [p[0] for p in points] + [p[1] for p in points]
    ys = [p[1] for p in points] + [p[0] for p in points]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(xs, ys, s=4, color="darkblue", alpha=0.7, linewidths=0)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    ax.set_xlabel("x = a/c")
    ax.set_ylabel("y = b/c")
    ax.set_title("packing dust")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _ellipse_outline(conic: Conic, samples: int = 256) -> Tuple[np.ndarray, np.ndarray]:
    """Parametric boundary of an ellipse conic via its quadratic form."""
    a, b, c, d, e, f = (float(v) for v in conic.coeffs())
    cx, cy = (float(v) for v in conic.center())
    # Value at the center is negative; the boundary is the level set 0 of
    # the centered form Q(dx, dy) = -value(center).
    q = np.array([[a, b / 2.0], [b / 2.0, c]])
    rhs = -(a * cx * cx + b * cx * cy + c * cy * cy + d * cx + e * cy + f)
    vals, vecs = np.linalg.eigh(q)
    axes = np.sqrt(rhs / vals)
    t = np.linspace(0.0, 2.0 * math.pi, samples)
    circle = np.stack([axes[0] * np.cos(t), axes[1] * np.sin(t)])
    xy = vecs @ circle
    return cx + xy[0], cy + xy[1]


def save_corona_figure(entries, path, show_parabola: bool = True) -> None:
    """Outlines of corona ellipses in the unit square."""
    fig, ax = plt.subplots(figsize=(5, 5))
    for entry in entries:
        conic = entry.conic
        if conic.is_ellipse:
            xs, ys = _ellipse_outline(conic)
            ax.plot(xs, ys, lw=0.8, color="darkred")
        elif show_parabola and not conic.is_degenerate:
            # the parabola member: plot y as the two roots over x
            x = np.linspace(0.0, 1.0, 400)
            lo = (1.0 - np.sqrt(x)) ** 2
            ax.plot(x, lo, lw=0.8, color="darkgreen")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    ax.set_title("x-axis corona")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
