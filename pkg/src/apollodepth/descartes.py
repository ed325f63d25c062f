"""Descartes configurations and the Apollonian depth process.

A tricycle is a triple of curvatures of three mutually tangent disks.  Its
two completions to a four-disk Descartes configuration are

    d = a + b + c ± 2*sqrt(ab + bc + ca)

and both roots satisfy the linear reflection  d + d' = 2(a + b + c).

The depth process repeatedly replaces the greatest curvature with the
smaller completion until a nonpositive value (the packing's major disk)
appears.  The exact engine needs a single square root for a rational seed:
after the first step the dropped maximum is itself a completion of the new
triple, so the reflection identity keeps every later value inside the
seed's quadratic field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import QuadValue, rational_to_json

Curvature = Union[int, Fraction, float, QuadValue]
Triple = Sequence[Curvature]

DEFAULT_CAP = 21
# Relative floor for the float engine: once a positive value falls below
# UNDERFLOW_REL times the seed scale, float64 can no longer separate the
# trajectory from the zero boundary and the run is reported as capped.
UNDERFLOW_REL = 1e-12
UNDERFLOW_ABS = 1e-300

__all__ = [
    "DEFAULT_CAP",
    "DepthResult",
    "NotCompletableError",
    "barycentric",
    "completions",
    "depth",
    "depth_exact",
    "depth_float",
    "depth_scaled",
    "descartes_residual",
    "golden_point",
    "golden_seed",
    "is_descartes",
    "major_curvature",
    "reduce_to_moduli",
    "reflect",
]


class NotCompletableError(ValueError):
    """Tricycle with negative radicand: no real Descartes completion."""


@dataclass(frozen=True)
class DepthResult:
    """Outcome of the depth process.

    ``depth`` is the number of steps to the first nonpositive curvature, or
    ``None`` when the step cap was reached without one.  ``underflow`` marks
    cap results forced by the float engine's resolution guard.  When
    requested, ``trace`` holds the full triple sequence T0..Td.
    """

    depth: Optional[int]
    cap: int
    trace: Optional[tuple] = None
    underflow: bool = False

    @property
    def capped(self) -> bool:
        return self.depth is None

    def to_json(self) -> dict:
        out: dict = {"cap": self.cap}
        if self.capped:
            out["result"] = "cap-reached"
            if self.underflow:
                out["underflow"] = True
        else:
            out["result"] = "finite"
            out["depth"] = self.depth
        if self.trace is not None:
            out["trace"] = [
                [rational_to_json(v) for v in t] for t in self.trace
            ]
        return out


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, QuadValue))


def _exact_triple(t: Triple) -> Optional[list]:
    if all(_is_exact(v) for v in t):
        out = []
        for v in t:
            if isinstance(v, QuadValue):
                r = v.as_rational()
                if r is None:
                    raise ValueError(
                        "exact depth needs a rational seed; irrational "
                        "curvatures are only produced, never consumed"
                    )
                v = r
            out.append(Fraction(v))
        return out
    return None


def descartes_residual(q: Sequence[Curvature]):
    """(a+b+c+d)² − 2(a²+b²+c²+d²); zero exactly on Descartes quadruples."""
    a, b, c, d = q
    s = a + b + c + d
    return s * s - 2 * (a * a + b * b + c * c + d * d)


def is_descartes(q: Sequence[Curvature], tol: float = 1e-9) -> bool:
    """Eq-residual test: exact zero for exact entries, scaled tolerance
    ``tol * max(1, scale)²`` for floats."""
    res = descartes_residual(q)
    if all(_is_exact(v) for v in q):
        if isinstance(res, QuadValue):
            return res.sign() == 0
        return res == 0
    scale = max(1.0, max(abs(float(v)) for v in q))
    return abs(float(res)) <= tol * scale * scale


def completions(t: Triple):
    """Both curvatures completing tricycle ``t`` to a Descartes quadruple.

    Returns ``(d_minus, d_plus)`` with ``d_minus <= d_plus``.  Exact inputs
    give Fractions when the radicand is a perfect square and QuadValues
    otherwise; float inputs give floats.  Raises
    :class:`NotCompletableError` when ``ab+bc+ca < 0``.
    """
    exact = _exact_triple(t)
    if exact is not None:
        a, b, c = exact
        q = a * b + b * c + c * a
        if q < 0:
            raise NotCompletableError(f"radicand {q} is negative")
        s = a + b + c
        lo = QuadValue(s, -2, q)
        hi = QuadValue(s, 2, q)
        lo_r, hi_r = lo.as_rational(), hi.as_rational()
        if lo_r is not None and hi_r is not None:
            return lo_r, hi_r
        return lo, hi
    a, b, c = (float(v) for v in t)
    q = a * b + b * c + c * a
    if q < 0:
        raise NotCompletableError(f"radicand {q} is negative")
    s = a + b + c
    root = 2.0 * math.sqrt(q)
    return s - root, s + root


def reflect(q: Sequence[Curvature], index: int):
    """Swap entry ``index`` for the other Descartes solution:
    ``d' = 2*(sum of the rest) - d``.  The input must satisfy the Descartes
    relation; the output does again (the map is an involution)."""
    if not 0 <= index <= 3:
        raise ValueError("index must be 0..3")
    if not is_descartes(q):
        raise ValueError("not a Descartes quadruple")
    q = list(q)
    rest = [v for i, v in enumerate(q) if i != index]
    q[index] = 2 * (rest[0] + rest[1] + rest[2]) - q[index]
    return tuple(q)


def _argmax(values) -> int:
    # Lowest index wins ties, so traces are deterministic.
    best = 0
    for k in (1, 2):
        if values[k] > values[best]:
            best = k
    return best


def depth_exact(t: Triple, cap: int = DEFAULT_CAP, trace: bool = False) -> DepthResult:
    """Exact depth of a rational tricycle.

    Only the seed's radicand ``q0 = ab+bc+ca`` is ever rooted: each later
    step takes the smaller of the dropped maximum and its reflection, both
    of which live in Q[sqrt(q0)].
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    seed = _exact_triple(t)
    if seed is None:
        raise TypeError("depth_exact needs exact (int/Fraction) entries")

    def snap(triple):
        return tuple(v.as_rational() if isinstance(v, QuadValue) and v.s == 0 else v
                     for v in triple)

    steps_trace = [snap(tuple(seed))] if trace else None
    if min(seed) <= 0:
        return DepthResult(0, cap, tuple(steps_trace) if trace else None)

    q0 = seed[0] * seed[1] + seed[1] * seed[2] + seed[2] * seed[0]
    # q0 > 0 whenever all entries are positive.
    T = [QuadValue(v, 0, q0) for v in seed]
    new = QuadValue(seed[0] + seed[1] + seed[2], -2, q0)
    i = _argmax(T)
    dropped = T[i]
    T[i] = new
    steps = 1
    if trace:
        steps_trace.append(snap(tuple(T)))
    while new.sign() > 0:
        if steps >= cap:
            return DepthResult(None, cap, tuple(steps_trace) if trace else None)
        refl = 2 * (T[0] + T[1] + T[2]) - dropped
        new = dropped if dropped < refl else refl
        i = _argmax(T)
        dropped = T[i]
        T[i] = new
        steps += 1
        if trace:
            steps_trace.append(snap(tuple(T)))
    return DepthResult(steps, cap, tuple(steps_trace) if trace else None)


def depth_float(
    t: Triple,
    cap: int = DEFAULT_CAP,
    trace: bool = False,
    underflow_rel: float = UNDERFLOW_REL,
) -> DepthResult:
    """Floating-point depth process.

    Terminates on ``new <= 0`` like the exact process.  A positive value
    below ``max(underflow_rel * seed_scale, 1e-300)`` reports a capped
    result instead: past that line float64 cannot tell the trajectory from
    the boundary of a divergent (infinite-depth) one.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    T = [float(v) for v in t]
    steps_trace = [tuple(T)] if trace else None
    if min(T) <= 0:
        return DepthResult(0, cap, tuple(steps_trace) if trace else None)
    floor = max(underflow_rel * max(T), UNDERFLOW_ABS)
    steps = 0
    while steps < cap:
        a, b, c = T
        new = a + b + c - 2.0 * math.sqrt(a * b + b * c + c * a)
        i = _argmax(T)
        T[i] = new
        steps += 1
        if trace:
            steps_trace.append(tuple(T))
        if new <= 0.0:
            return DepthResult(steps, cap, tuple(steps_trace) if trace else None)
        if new < floor:
            return DepthResult(
                None, cap, tuple(steps_trace) if trace else None, underflow=True
            )
    return DepthResult(None, cap, tuple(steps_trace) if trace else None)


def depth(t: Triple, cap: int = DEFAULT_CAP, trace: bool = False) -> DepthResult:
    """Apollonian depth of a tricycle: exact for rational entries, float
    otherwise.  Zero immediately if any entry is nonpositive."""
    if all(_is_exact(v) for v in t):
        return depth_exact(t, cap, trace)
    return depth_float(t, cap, trace)


def depth_scaled(x, y, cap: int = DEFAULT_CAP, trace: bool = False) -> DepthResult:
    """Depth in moduli coordinates: δ(x, y) = δ(1, x, y)."""
    one: Curvature = 1 if _is_exact(x) and _is_exact(y) else 1.0
    return depth((one, x, y), cap, trace)


def major_curvature(t: Triple, cap: int = DEFAULT_CAP):
    """Curvature of the packing's major disk: the first nonpositive value
    of the depth process (0 for half-plane packings, negative for a
    bounding circle).  ``None`` when the cap is reached first."""
    result = depth(t, cap, trace=True)
    if result.capped:
        return None
    if result.depth == 0:
        return min(t)
    return min(result.trace[-1], key=lambda v: float(v))


def reduce_to_moduli(t: Triple):
    """Moduli coordinates (a/c, b/c) of a positive tricycle, c the greatest
    entry (lowest index on ties); the other two keep their input order."""
    vals = list(t)
    if any((v.sign() <= 0 if isinstance(v, QuadValue) else v <= 0) for v in vals):
        raise ValueError("moduli reduction needs strictly positive curvatures")
    i = _argmax(vals)
    c = vals.pop(i)
    if isinstance(c, QuadValue) or any(isinstance(v, QuadValue) for v in vals):
        return float(vals[0]) / float(c), float(vals[1]) / float(c)
    if isinstance(c, float) or any(isinstance(v, float) for v in vals):
        return float(vals[0]) / float(c), float(vals[1]) / float(c)
    return Fraction(vals[0]) / Fraction(c), Fraction(vals[1]) / Fraction(c)


def barycentric(t: Triple):
    """Barycentric coordinates (a, b, c) / (a+b+c); exact for exact input."""
    a, b, c = t
    s = a + b + c
    zero = s.sign() == 0 if isinstance(s, QuadValue) else s == 0
    if zero:
        raise ValueError("zero curvature sum has no barycentric image")
    if all(_is_exact(v) for v in t) and not isinstance(s, QuadValue):
        s = Fraction(s)
        return Fraction(a) / s, Fraction(b) / s, Fraction(c) / s
    fa, fb, fc = float(a), float(b), float(c)
    fs = fa + fb + fc
    return fa / fs, fb / fs, fc / fs


def golden_seed() -> tuple:
    """The float tricycle (φ−√φ, 1, φ+√φ) whose depth process never ends.

    The entries form a geometric triple (p, 1, 1/p): each step rescales the
    trajectory by p, so no nonpositive curvature ever appears.
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    root = math.sqrt(phi)
    return (phi - root, 1.0, phi + root)


def golden_point() -> tuple:
    """Chart location of the divergent seed, (φ−√φ, (φ−√φ)²) ≈ (0.3460, 0.1197).

    ``reduce_to_moduli(golden_seed())`` returns the same pair transposed;
    the chart is symmetric under (x, y) → (y, x).
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    p = phi - math.sqrt(phi)
    return (p, p * p)
