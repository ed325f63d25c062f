"""Dust of a disk packing: its tricycles plotted in moduli coordinates.

Circles carry their curvature and the curvature-weighted center ``b*z``,
because that weighting makes the Descartes reflection linear in centers as
well:  replacing one member of a quadruple maps ``(b, b*z)`` to
``2*(sum of the rest) − (b, b*z)`` componentwise.  Breadth-first closure
of those reflections enumerates the packing up to a curvature bound; the
tangency graph of the result yields every tricycle, and each positive
tricycle lands at one moduli point.

Half-plane members (curvature 0) are out of scope here: the metric
tangency test needs finite radii.  One negative (bounding) disk is fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

__all__ = [
    "Circle",
    "apollonian_window_seed",
    "circles_tangent",
    "dust_points",
    "generate_packing",
    "reflect_circle",
]

TANGENCY_TOL = 1e-9


@dataclass(frozen=True)
class Circle:
    """A circle as (curvature, curvature-weighted center)."""

    curvature: float
    wx: float
    wy: float

    @property
    def radius(self) -> float:
        return 1.0 / self.curvature

    @property
    def center(self) -> Tuple[float, float]:
        return (self.wx / self.curvature, self.wy / self.curvature)

    @classmethod
    def from_center(cls, curvature: float, x: float, y: float) -> "Circle":
        return cls(curvature, curvature * x, curvature * y)


def apollonian_window_seed() -> Tuple[Circle, Circle, Circle, Circle]:
    """The integral quadruple (−1, 2, 2, 3): unit bounding circle, two
    half-size disks on the horizontal axis, one third-size disk above."""
    return (
        Circle.from_center(-1.0, 0.0, 0.0),
        Circle.from_center(2.0, -0.5, 0.0),
        Circle.from_center(2.0, 0.5, 0.0),
        Circle.from_center(3.0, 0.0, 2.0 / 3.0),
    )


def circles_tangent(a: Circle, b: Circle, tol: float = TANGENCY_TOL) -> bool:
    """Externally tangent disks: center distance equals |1/b1 + 1/b2|
    (which covers the internally drawn bounding circle, whose curvature is
    negative)."""
    ax, ay = a.center
    bx, by = b.center
    dist = math.hypot(ax - bx, ay - by)
    return abs(dist - abs(a.radius + b.radius)) <= tol


def reflect_circle(quad: Sequence[Circle], index: int) -> Circle:
    """Swap member ``index`` for the other Descartes solution."""
    others = [c for i, c in enumerate(quad) if i != index]
    target = quad[index]
    return Circle(
        2.0 * sum(c.curvature for c in others) - target.curvature,
        2.0 * sum(c.wx for c in others) - target.wx,
        2.0 * sum(c.wy for c in others) - target.wy,
    )


def _validate_seed(seed: Sequence[Circle]) -> None:
    if len(seed) != 4:
        raise ValueError("seed must be a quadruple of circles")
    curvs = [c.curvature for c in seed]
    if any(b == 0 for b in curvs):
        raise ValueError("half-plane (zero curvature) members are unsupported")
    s = sum(curvs)
    residual = s * s - 2.0 * sum(b * b for b in curvs)
    scale = max(1.0, max(abs(b) for b in curvs))
    if abs(residual) > 1e-9 * scale * scale:
        raise ValueError("seed does not satisfy the Descartes relation")
    for i in range(4):
        for j in range(i + 1, 4):
            if not circles_tangent(seed[i], seed[j]):
                raise ValueError(f"seed members {i} and {j} are not tangent")


def _key(c: Circle) -> Tuple[int, int, int]:
    return (round(c.curvature * 1e6), round(c.wx * 1e6), round(c.wy * 1e6))


def generate_packing(seed: Sequence[Circle], curvature_bound: float) -> List[Circle]:
    """Breadth-first reflection closure of the packing, keeping every
    circle with curvature <= ``curvature_bound``."""
    _validate_seed(seed)
    if curvature_bound <= max(c.curvature for c in seed):
        raise ValueError("curvature_bound must exceed the largest seed curvature")
    circles: Dict[Tuple[int, int, int], Circle] = {_key(c): c for c in seed}
    queue: List[Tuple[Circle, Circle, Circle, Circle]] = [tuple(seed)]
    while queue:
        quad = queue.pop()
        for i in range(4):
            new = reflect_circle(quad, i)
            if new.curvature > curvature_bound:
                continue
            k = _key(new)
            if k in circles:
                continue
            # Novelty is the only prune: every circle is born exactly once
            # from the quadruple of its co-solution, so the closure is full.
            circles[k] = new
            rest = tuple(c for j, c in enumerate(quad) if j != i)
            queue.append(rest + (new,))
    return sorted(circles.values(), key=lambda c: (c.curvature, c.wx, c.wy))


def dust_points(
    seed: Sequence[Circle], curvature_bound: float
) -> List[Tuple[float, float]]:
    """Moduli points of every positive tricycle in the packing (deduplicated,
    sorted).  Points use the ascending-curvature order (a <= b <= c), i.e.
    x <= y, inside the closed unit square."""
    packing = generate_packing(seed, curvature_bound)
    positive = [c for c in packing if c.curvature > 0]
    n = len(positive)
    adjacency: List[List[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if circles_tangent(positive[i], positive[j]):
                adjacency[i].append(j)
    points = set()
    for i in range(n):
        for j in adjacency[i]:
            sij = set(adjacency[j])
            for k in adjacency[i]:
                if k > j and k in sij:
                    a, b, c = sorted(
                        (positive[i].curvature, positive[j].curvature,
                         positive[k].curvature)
                    )
                    points.add((round(a / c, 12), round(b / c, 12)))
    return sorted(points)
