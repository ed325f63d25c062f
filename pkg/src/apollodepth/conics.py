"""Exact conics for the constant-depth plateaus.

Every plateau boundary in the depth chart is a conic
``A x² + B xy + C y² + D x + E y + F = 0`` with rational coefficients.
This module carries three sources of them:

* the closed families: the depth-1 parabola, the depth-2 ellipse, and the
  x-axis corona ellipse ``E[p, m]`` tangent to the axis at ``p²/m²``;
* ``derive_conic``, which solves a disk arrangement (one Descartes
  quadruple plus a chain of reflection identities) for the boundary conic;
* the checked-in registry of reference plateau equations, stored in the
  completed-square normalization they are usually displayed in.

Canonical storage is denominator-free with content 1 and positive leading
coefficient, which for an ellipse makes the quadratic form negative exactly
on the interior.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence, Tuple

from .exactnum import format_rational, parse_rational

__all__ = [
    "ArrangementSpec",
    "Conic",
    "LinearConstraint",
    "RegistryEntry",
    "SquareForm",
    "UnderdeterminedArrangementError",
    "plateau_registry",
    "conic_eval",
    "conic_tangency_x",
    "corona_conic",
    "corona_square_form",
    "depth2_conic",
    "derive_conic",
    "interior_point",
    "mediant_ellipse",
    "parabola_conic",
    "parabola_point",
    "parabolic_tangency",
    "registry_lookup",
    "tangency_point",
]


class UnderdeterminedArrangementError(ValueError):
    """The linear chain does not pin down every unknown curvature."""


def _canonical(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    coeffs = [Fraction(c) for c in coeffs]
    if all(c == 0 for c in coeffs[:5]):
        raise ValueError("all of A, B, C, D, E vanish")
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


@dataclass(frozen=True)
class Conic:
    """A x² + B xy + C y² + D x + E y + F = 0, canonical integer scaling."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction

    @classmethod
    def from_coeffs(cls, a, b, c, d, e, f) -> "Conic":
        return cls(*_canonical((a, b, c, d, e, f)))

    def coeffs(self) -> Tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def eval(self, x, y):
        """Quadratic form value at (x, y); exact for exact input.
        Negative inside an ellipse under the canonical scaling."""
        a, b, c, d, e, f = self.coeffs()
        if isinstance(x, float) or isinstance(y, float):
            a, b, c, d, e, f = (float(v) for v in self.coeffs())
            return a * x * x + b * x * y + c * y * y + d * x + e * y + f
        x, y = Fraction(x), Fraction(y)
        return a * x * x + b * x * y + c * y * y + d * x + e * y + f

    def contains(self, x, y) -> bool:
        return self.eval(x, y) == 0

    @property
    def is_ellipse(self) -> bool:
        return 4 * self.a * self.c - self.b * self.b > 0

    @property
    def is_degenerate(self) -> bool:
        """Vanishing determinant of the full 3×3 conic matrix (doubled
        lines such as x² = 0, or a quadratic part that collapsed)."""
        a, b, c, d, e, f = self.coeffs()
        det = (
            a * (c * f - e * e / 4)
            - (b / 2) * (b * f / 2 - e * d / 4)
            + (d / 2) * (b * e / 4 - c * d / 2)
        )
        return det == 0

    def tangency_x(self) -> Optional[Fraction]:
        """Double root of the restriction to y = 0, if the conic is tangent
        to the x-axis there (discriminant exactly zero)."""
        if self.a == 0:
            return None
        disc = self.d * self.d - 4 * self.a * self.f
        if disc != 0:
            return None
        return -self.d / (2 * self.a)

    def center(self) -> Tuple[Fraction, Fraction]:
        """Solution of the gradient system 2Ax+By+D = 0, Bx+2Cy+E = 0."""
        det = 4 * self.a * self.c - self.b * self.b
        if det == 0:
            raise ValueError("conic has no unique center")
        x = (self.b * self.e - 2 * self.c * self.d) / det
        y = (self.b * self.d - 2 * self.a * self.e) / det
        return x, y

    def to_json(self, label: Optional[str] = None) -> dict:
        out = {k: format_rational(v) for k, v in zip("ABCDEF", self.coeffs())}
        if label is not None:
            out["label"] = label
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Conic":
        return cls.from_coeffs(*(parse_rational(obj[k]) for k in "ABCDEF"))

    def __str__(self) -> str:
        names = ("x^2", "xy", "y^2", "x", "y", "")
        parts = []
        for coef, name in zip(self.coeffs(), names):
            if coef == 0:
                continue
            text = format_rational(coef)
            parts.append(f"{text}{'*' + name if name else ''}")
        return " + ".join(parts).replace("+ -", "- ") + " = 0"


@dataclass(frozen=True)
class SquareForm:
    """Displayed normalization ``(u x + v y)² + w = 4xy + e x + f y``."""

    u: Fraction
    v: Fraction
    w: Fraction
    e: Fraction
    f: Fraction

    def conic(self) -> Conic:
        u, v, w, e, f = self.u, self.v, self.w, self.e, self.f
        return Conic.from_coeffs(u * u, 2 * u * v - 4, v * v, -e, -f, w)

def conic_eval(c: Conic, pt) -> Fraction:
    return c.eval(pt[0], pt[1])


def conic_tangency_x(c: Conic) -> Optional[Fraction]:
    return c.tangency_x()


def interior_point(c: Conic) -> Tuple[Fraction, Fraction]:
    """Ellipse center: an interior point with exact rational coordinates."""
    if not c.is_ellipse:
        raise ValueError("interior_point needs an ellipse (4AC - B^2 > 0)")
    return c.center()


def parabola_conic() -> Conic:
    """Boundary of the depth-1 region: 2(x+y) = (x−y)² + 1."""
    return Conic.from_coeffs(1, -2, 1, -2, -2, 1)


def depth2_conic() -> Conic:
    """Boundary of the depth-2 plateau: 36(x+y−1/3)² + 12(x−y)² = 1."""
    # Expanded independently of the corona family; equal to E[1, 2].
    return Conic.from_coeffs(48, 48, 48, -24, -24, 3)


def _validate_corona_pair(p: int, m: int) -> None:
    if m < 1 or p < 0 or p > m:
        raise ValueError(f"corona pair needs 0 <= p <= m, m >= 1: ({p}, {m})")
    if math.gcd(p, m) != 1:
        raise ValueError(f"corona pair must be coprime: ({p}, {m})")


def corona_square_form(p: int, m: int) -> SquareForm:
    """Completed-square form of the x-axis corona ellipse E[p, m]."""
    _validate_corona_pair(p, m)
    if p == 0:
        raise ValueError("E[0, 1] has no square form; it is the line x = 0")
    return SquareForm(
        u=Fraction(m, p),
        v=Fraction(p * p + m * m - 1, p * m),
        w=Fraction(p * p, m * m),
        e=Fraction(2),
        f=2 * Fraction(m * m - p * p + 1, m * m),
    )


def corona_conic(p: int, m: int) -> Conic:
    """The x-axis corona member E[p, m], tangent to the axis at p²/m².

    E[1, 1] is the parabola; E[0, 1] degenerates to the doubled line
    x² = 0 (the y-axis), obtained by clearing the p² factor.
    """
    _validate_corona_pair(p, m)
    if p == 0:
        return Conic.from_coeffs(1, 0, 0, 0, 0, 0)
    return corona_square_form(p, m).conic()


def _require_unimodular(p: int, m: int, q: int, n: int) -> None:
    if abs(p * n - q * m) != 1:
        raise ValueError(f"pairs ({p},{m}), ({q},{n}) are not unimodular neighbors")


def tangency_point(p: int, m: int, q: int, n: int) -> Tuple[Fraction, Fraction]:
    """Point where the tangent corona ellipses E[p,m] and E[q,n] meet:
    ((p²+q²−1)/(m²+n²−1), 1/(m²+n²−1))."""
    _validate_corona_pair(p, m)
    _validate_corona_pair(q, n)
    _require_unimodular(p, m, q, n)
    den = m * m + n * n - 1
    return Fraction(p * p + q * q - 1, den), Fraction(1, den)


def mediant_ellipse(p: int, m: int, q: int, n: int) -> Tuple[int, int]:
    """Label of the ellipse inscribed between unimodular neighbors:
    E[p+q, m+n], tangent to the axis at (p+q)²/(m+n)²."""
    _validate_corona_pair(p, m)
    _validate_corona_pair(q, n)
    _require_unimodular(p, m, q, n)
    return (p + q, m + n)


def parabola_point(p: int, q: int) -> Tuple[Fraction, Fraction]:
    """Rational parabola point (p²/n², q²/n²) with n = p+q."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("parabola_point needs p, q >= 0 with p+q >= 1")
    n = p + q
    return Fraction(p * p, n * n), Fraction(q * q, n * n)


def parabolic_tangency(p: int, q: int, p2: int, q2: int) -> Tuple[Fraction, Fraction]:
    """Tangency point of the parabolic-corona ellipses F[p,q] and F[p2,q2]:
    ((p²+p2²−1)/(m²+m2²−1), (q²+q2²−1)/(m²+m2²−1)) with m = p+q, m2 = p2+q2."""
    m, m2 = p + q, p2 + q2
    if abs(p * m2 - p2 * m) != 1:
        raise ValueError(
            f"F-pairs ({p},{q}), ({p2},{q2}) are not tangent (determinant != ±1)"
        )
    den = m * m + m2 * m2 - 1
    return Fraction(p * p + p2 * p2 - 1, den), Fraction(q * q + q2 * q2 - 1, den)


# --- arrangement-driven derivation -----------------------------------------

Affine = Tuple[Fraction, Fraction, Fraction]  # c0 + cx*x + cy*y

_ZERO: Affine = (Fraction(0), Fraction(0), Fraction(0))
_BASE_SYMBOLS = {
    "0": (Fraction(0), Fraction(0), Fraction(0)),
    "1": (Fraction(1), Fraction(0), Fraction(0)),
    "x": (Fraction(0), Fraction(1), Fraction(0)),
    "y": (Fraction(0), Fraction(0), Fraction(1)),
}


@dataclass(frozen=True)
class LinearConstraint:
    """Reflection identity u + v = 2(w1 + w2 + w3) between named disks."""

    pair: Tuple[str, str]
    triple: Tuple[str, str, str]


@dataclass(frozen=True)
class ArrangementSpec:
    """A disk arrangement: named unknowns s1..sn, a chain of reflection
    identities, and one quadruple carrying the Descartes equation."""

    unknowns: Tuple[str, ...]
    linear: Tuple[LinearConstraint, ...]
    quadratic: Tuple[str, str, str, str]

    @classmethod
    def from_json(cls, obj: dict) -> "ArrangementSpec":
        return cls(
            unknowns=tuple(obj["unknowns"]),
            linear=tuple(
                LinearConstraint(tuple(row["pair"]), tuple(row["triple"]))
                for row in obj["linear"]
            ),
            quadratic=tuple(obj["quadratic"]),
        )

    def to_json(self) -> dict:
        return {
            "unknowns": list(self.unknowns),
            "linear": [
                {"pair": list(c.pair), "triple": list(c.triple)} for c in self.linear
            ],
            "quadratic": list(self.quadratic),
        }


def _affine_add(a: Affine, b: Affine) -> Affine:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _affine_scale(a: Affine, k: Fraction) -> Affine:
    return (a[0] * k, a[1] * k, a[2] * k)


def _solve_chain(spec: ArrangementSpec) -> dict:
    """Gaussian elimination over Q with affine right-hand sides, giving each
    unknown curvature as an affine function of x and y."""
    names = list(spec.unknowns)
    index = {name: k for k, name in enumerate(names)}
    n = len(names)
    if len(spec.linear) != n:
        raise UnderdeterminedArrangementError(
            f"{n} unknowns need exactly {n} chain identities, got {len(spec.linear)}"
        )
    rows = []
    rhs = []
    for cons in spec.linear:
        coeffs = [Fraction(0)] * n
        pure: Affine = _ZERO
        for sym, weight in [(cons.pair[0], 1), (cons.pair[1], 1)] + [
            (w, -2) for w in cons.triple
        ]:
            if sym in index:
                coeffs[index[sym]] += weight
            elif sym in _BASE_SYMBOLS:
                pure = _affine_add(pure, _affine_scale(_BASE_SYMBOLS[sym], Fraction(weight)))
            else:
                raise ValueError(f"unknown symbol {sym!r} in arrangement")
        rows.append(coeffs)
        rhs.append(_affine_scale(pure, Fraction(-1)))
    # Forward elimination with partial pivot by exact nonzero test.
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise UnderdeterminedArrangementError("singular chain system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        rhs[col] = _affine_scale(rhs[col], inv)
        for r in range(n):
            if r != col and rows[r][col] != 0:
                k = rows[r][col]
                rows[r] = [a - k * b for a, b in zip(rows[r], rows[col])]
                rhs[r] = _affine_add(rhs[r], _affine_scale(rhs[col], -k))
    solution = dict(_BASE_SYMBOLS)
    for name, value in zip(names, rhs):
        solution[name] = value
    return solution


def derive_conic(spec: ArrangementSpec) -> Conic:
    """Solve the chain for the unknown curvatures and substitute them into
    the quadruple's Descartes equation, yielding the plateau conic."""
    solution = _solve_chain(spec)
    try:
        forms = [solution[sym] for sym in spec.quadratic]
    except KeyError as exc:
        raise ValueError(f"unknown symbol {exc} in quadratic quadruple") from exc

    def mono(p: Affine, q: Affine):
        # product of two affine forms over basis (1, x, y, x^2, xy, y^2)
        return (
            p[0] * q[0],
            p[0] * q[1] + p[1] * q[0],
            p[0] * q[2] + p[2] * q[0],
            p[1] * q[1],
            p[1] * q[2] + p[2] * q[1],
            p[2] * q[2],
        )

    total = forms[0]
    for form in forms[1:]:
        total = _affine_add(total, form)
    lhs = mono(total, total)
    rhs = [Fraction(0)] * 6
    for form in forms:
        sq = mono(form, form)
        rhs = [a + 2 * b for a, b in zip(rhs, sq)]
    residual = [a - b for a, b in zip(lhs, rhs)]
    const, cx, cy, cxx, cxy, cyy = residual
    return Conic.from_coeffs(cxx, cxy, cyy, cx, cy, const)


# --- reference registry ------------------------------------------------------

@dataclass(frozen=True)
class RegistryEntry:
    label: str
    square: SquareForm
    conic: Conic


_REGISTRY: Optional[Tuple[RegistryEntry, ...]] = None


def plateau_registry() -> Tuple[RegistryEntry, ...]:
    """The checked-in catalogue of plateau equations, in display order.

    Labels follow the dL_{i,j} deformed-grid scheme and are treated as
    opaque keys (one label occurs twice in the source listing and is kept
    twice here).
    """
    global _REGISTRY
    if _REGISTRY is None:
        text = (
            resources.files("apollodepth")
            .joinpath("data/plateau_registry.json")
            .read_text()
        )
        entries = []
        for row in json.loads(text):
            square = SquareForm(*(parse_rational(row[k]) for k in "uvwef"))
            entries.append(
                RegistryEntry(label=row["label"], square=square, conic=square.conic())
            )
        _REGISTRY = tuple(entries)
    return _REGISTRY


def registry_lookup(label: str) -> Tuple[RegistryEntry, ...]:
    """All registry entries with the given label (usually one)."""
    return tuple(e for e in plateau_registry() if e.label == label)
