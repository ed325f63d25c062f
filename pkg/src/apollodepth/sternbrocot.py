"""Stern-Brocot structure of the plateau tangencies.

Pairs ``[p, q]`` are coprime integer vectors.  The mediant array starts
from [1,0], [0,1]; dropping repeats turns it into the tree of all positive
reduced fractions.  The tree row of ``[p, m]`` (root [1,1] = row 1) equals
the depth of the plateau ellipse E[p, m], so enumerating tree levels
enumerates the x-axis corona.  (The raw array display starts one level
before the tree: array row r+1 holds the tree's row-r newcomers.)

The parabolic corona follows the same structure under the deformed Farey
sum ⊞ acting on squared fractions:
(√a + √c)² / (√b + √d)² — on pair labels it is ordinary mediant addition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import conics
from .exactnum import exact_sqrt

Pair = Tuple[int, int]

__all__ = [
    "CoronaEllipse",
    "ParabolicEllipse",
    "MainChainLink",
    "deformed_add",
    "diagonal_chain",
    "farey_add",
    "main_chain",
    "parabolic_corona",
    "sb_array",
    "sb_row_of",
    "squared_fraction_pair",
    "x_corona",
]


def _validate_pair(pair: Pair) -> Pair:
    p, q = pair
    if p < 0 or q < 0 or (p, q) == (0, 0):
        raise ValueError(f"invalid pair {pair}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"pair {pair} is not reduced")
    return (p, q)


def farey_add(a: Pair, b: Pair) -> Pair:
    """Mediant (vector sum) of two pairs, reduced."""
    p, q = a[0] + b[0], a[1] + b[1]
    g = math.gcd(p, q)
    return (p // g, q // g)


def deformed_add(a: Pair, b: Pair) -> Pair:
    """Deformed Farey sum on squared fractions, in pair representation:
    p²/m² ⊞ q²/n² = (p+q)²/(m+n)², carried as [p, m] ⊞ [q, n] = [p+q, m+n]."""
    _validate_pair(a)
    _validate_pair(b)
    return farey_add(a, b)


def squared_fraction_pair(x: Fraction) -> Pair:
    """Pair [p, m] with x = p²/m², for callers holding the raw fraction.
    Raises ``ValueError`` when x is not the square of a rational."""
    root = exact_sqrt(Fraction(x))
    if root is None:
        raise ValueError(f"{x} is not a squared fraction")
    return (root.numerator, root.denominator)


def sb_array(rows: int) -> List[List[Pair]]:
    """First ``rows`` rows of the mediant array, starting [1,0], [0,1]."""
    if rows < 1:
        raise ValueError("rows must be >= 1")
    out = [[(1, 0), (0, 1)]]
    for _ in range(rows - 1):
        prev = out[-1]
        nxt: List[Pair] = []
        for left, right in zip(prev, prev[1:]):
            nxt.append(left)
            nxt.append((left[0] + right[0], left[1] + right[1]))
        nxt.append(prev[-1])
        out.append(nxt)
    return out


def sb_row_of(pair: Pair) -> int:
    """Tree row of a reduced pair, root [1,1] = row 1, found by the
    mediant-ancestry walk.  The boundary pairs [1,0] and [0,1] are not
    tree nodes."""
    p, q = _validate_pair(pair)
    if q == 0 or p == 0:
        raise ValueError(f"{pair} is a boundary pair, not a tree node")
    lo, hi = (0, 1), (1, 0)
    cur = (1, 1)
    row = 1
    while cur != (p, q):
        if p * cur[1] < cur[0] * q:
            hi = cur
        else:
            lo = cur
        cur = (lo[0] + hi[0], lo[1] + hi[1])
        row += 1
    return row


@dataclass(frozen=True)
class CoronaEllipse:
    """x-axis corona member E[pair] with its axis tangency and conic."""

    pair: Pair
    row: int
    tangent_x: Fraction
    conic: conics.Conic
    parents: Tuple[Pair, Pair]

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "row": self.row,
            "tangent_x": str(self.tangent_x),
            "conic": self.conic.to_json(),
        }


def _fraction_subtree(max_row: int):
    """Nodes of the tree restricted to fractions in (0, 1): pairs [p, m]
    with p < m, each with its row and the two mediant generators."""
    out = []

    def rec(lo: Pair, hi: Pair, row: int):
        if row > max_row:
            return
        med = (lo[0] + hi[0], lo[1] + hi[1])
        out.append((med, row, (lo, hi)))
        rec(lo, med, row + 1)
        rec(med, hi, row + 1)

    rec((0, 1), (1, 1), 2)
    return out


def x_corona(max_row: int) -> List[CoronaEllipse]:
    """All corona ellipses E[p, m] with tree row <= max_row, ordered by
    their axis tangency p²/m².  Row 1 is the parabola E[1, 1]."""
    if max_row < 1:
        raise ValueError("max_row must be >= 1")
    entries = [
        CoronaEllipse(
            pair=(1, 1),
            row=1,
            tangent_x=Fraction(1),
            conic=conics.corona_conic(1, 1),
            parents=((0, 1), (1, 0)),
        )
    ]
    for pair, row, parents in _fraction_subtree(max_row):
        entries.append(
            CoronaEllipse(
                pair=pair,
                row=row,
                tangent_x=Fraction(pair[0] ** 2, pair[1] ** 2),
                conic=conics.corona_conic(*pair),
                parents=parents,
            )
        )
    entries.sort(key=lambda e: e.tangent_x)
    return entries


@dataclass(frozen=True)
class ParabolicEllipse:
    """Parabolic corona member F[pair]: tangent to the depth-1 region at
    ``point``; ``parent_tangencies`` are its contacts with the two
    generators.  The degenerate members F[1,0] and F[0,1] are the axes."""

    pair: Pair
    row: int
    point: Tuple[Fraction, Fraction]
    degenerate: bool
    parents: Optional[Tuple[Pair, Pair]]
    parent_tangencies: Tuple[Tuple[Pair, Tuple[Fraction, Fraction]], ...]

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "row": self.row,
            "point": [str(self.point[0]), str(self.point[1])],
            "degenerate": self.degenerate,
            "tangencies": [
                {"pair": list(p), "point": [str(t[0]), str(t[1])]}
                for p, t in self.parent_tangencies
            ],
        }


def parabolic_corona(max_row: int) -> List[ParabolicEllipse]:
    """Parabolic corona F[p, q] generated by two-sided mediants from the
    axis members F[1,0] and F[0,1], down to tree row ``max_row``."""
    if max_row < 1:
        raise ValueError("max_row must be >= 1")
    entries = [
        ParabolicEllipse((1, 0), 0, conics.parabola_point(1, 0), True, None, ()),
        ParabolicEllipse((0, 1), 0, conics.parabola_point(0, 1), True, None, ()),
    ]

    def rec(lo: Pair, hi: Pair, row: int):
        if row > max_row:
            return
        med = (lo[0] + hi[0], lo[1] + hi[1])
        tangencies = tuple(
            (parent, conics.parabolic_tangency(*med, *parent)) for parent in (lo, hi)
        )
        entries.append(
            ParabolicEllipse(
                pair=med,
                row=row,
                point=conics.parabola_point(*med),
                degenerate=False,
                parents=(lo, hi),
                parent_tangencies=tangencies,
            )
        )
        rec(lo, med, row + 1)
        rec(med, hi, row + 1)

    rec((1, 0), (0, 1), 1)
    return entries


def diagonal_chain(count: int) -> List[Tuple[Fraction, Fraction]]:
    """Separation points of the diagonal ellipses:
    (1/(2n(n+1)), 1/(2n(n+1))) for n = 1..count."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return [
        (Fraction(1, 2 * n * (n + 1)), Fraction(1, 2 * n * (n + 1)))
        for n in range(1, count + 1)
    ]


@dataclass(frozen=True)
class MainChainLink:
    pair: Pair
    separation: Tuple[Fraction, Fraction]


def main_chain(count: int) -> List[MainChainLink]:
    """Main-chain members E[n−1, n] for n = 2..count with the points
    ((n−1)/(n+1), 1/(2n(n+1))) separating consecutive members."""
    if count < 2:
        raise ValueError("count must be >= 2")
    links = []
    for n in range(2, count + 1):
        sep = (Fraction(n - 1, n + 1), Fraction(1, 2 * n * (n + 1)))
        cross = conics.tangency_point(n - 1, n, n, n + 1)
        if cross != sep:
            raise AssertionError(f"separation mismatch at n={n}: {sep} vs {cross}")
        links.append(MainChainLink(pair=(n - 1, n), separation=sep))
    return links
