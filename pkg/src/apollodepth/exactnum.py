"""Exact rational and quadratic-field arithmetic.

``Rational`` is an alias for :class:`fractions.Fraction`: arbitrary precision,
always reduced, positive denominator.  :class:`QuadValue` extends it to
numbers of the form ``r + s*sqrt(d)`` over one fixed radicand ``d >= 0``,
with exact (decidable) sign and comparison.  A whole depth trajectory lives
in a single such field, so ``d`` is never normalized across values: two
QuadValues may only be combined when they carry the same radicand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction
RationalLike = Union[int, Fraction]

__all__ = [
    "Rational",
    "QuadValue",
    "RadicandMismatchError",
    "exact_sqrt",
    "parse_rational",
    "format_rational",
    "rational_to_json",
    "sign",
]


class RadicandMismatchError(ValueError):
    """Arithmetic attempted between QuadValues over different radicands."""


def sign(x) -> int:
    """Sign of an exact or floating-point number as -1, 0 or +1."""
    if isinstance(x, QuadValue):
        return x.sign()
    return (x > 0) - (x < 0)


def exact_sqrt(x: RationalLike) -> Optional[Fraction]:
    """Exact rational square root of ``x``, or ``None`` if ``x`` is not a
    rational square.

    Raises ``ValueError`` for negative input.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"exact_sqrt of negative value {x}")
    num, den = x.numerator, x.denominator
    rn = math.isqrt(num)
    if rn * rn != num:
        return None
    rd = math.isqrt(den)
    if rd * rd != den:
        return None
    return Fraction(rn, rd)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, integer, or decimal literals to an exact Fraction.

    Decimals are read base-10 exactly, so ``"0.0001"`` means 1/10000.
    """
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        if any(ch in s for ch in ".eE"):
            return Fraction(s)
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(x: RationalLike) -> str:
    """Render a rational as ``"p/q"`` (or ``"p"`` when the denominator is 1)."""
    return str(Fraction(x))


def rational_to_json(x) -> object:
    """JSON-friendly form: rational string, QuadValue object, or float."""
    if isinstance(x, QuadValue):
        return x.to_json()
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    return float(x)


class QuadValue:
    """Exact number ``r + s*sqrt(d)`` with Fraction components.

    ``d`` must be >= 0.  If ``d`` is a perfect rational square the value is
    normalized onto the rational line (``s == 0``); the radicand is kept so
    values from one trajectory stay combinable.
    """

    __slots__ = ("r", "s", "d")

    def __init__(self, r: RationalLike, s: RationalLike = 0, d: RationalLike = 0):
        r = Fraction(r)
        s = Fraction(s)
        d = Fraction(d)
        if d < 0:
            raise ValueError(f"negative radicand {d}")
        if s != 0:
            root = exact_sqrt(d)
            if root is not None:
                r += s * root
                s = Fraction(0)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadValue is immutable")

    def _coerce(self, other) -> "QuadValue":
        if isinstance(other, QuadValue):
            if other.s != 0 and self.s != 0 and other.d != self.d:
                raise RadicandMismatchError(
                    f"radicands differ: {self.d} vs {other.d}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadValue(other, 0, self.d)
        return NotImplemented  # type: ignore[return-value]

    def _carrier(self, other: "QuadValue") -> Fraction:
        # Preferred radicand for the result: whichever side is irrational.
        return self.d if self.s != 0 else (other.d if other.s != 0 else self.d)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadValue(self.r + o.r, self.s + o.s, self._carrier(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadValue(self.r - o.r, self.s - o.s, self._carrier(o))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadValue(-self.r, -self.s, self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadValue(self.r * other, self.s * other, self.d)
        if isinstance(other, QuadValue):
            o = self._coerce(other)
            d = self._carrier(o)
            return QuadValue(
                self.r * o.r + self.s * o.s * d,
                self.r * o.s + self.s * o.r,
                d,
            )
        return NotImplemented

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign by case analysis on r, s and comparison of r² with s²d."""
        r, s = self.r, self.s
        if s == 0:
            return (r > 0) - (r < 0)
        if r == 0:
            return 1 if s > 0 else -1
        if r > 0 and s > 0:
            return 1
        if r < 0 and s < 0:
            return -1
        lhs, rhs = r * r, s * s * self.d
        if r > 0:  # s < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def as_rational(self) -> Optional[Fraction]:
        """The value as a Fraction when it lies on the rational line."""
        return self.r if self.s == 0 else None

    def __float__(self) -> float:
        return float(self.r) + float(self.s) * math.sqrt(float(self.d))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadValue)):
            o = self._coerce(other)
            return (self - o).sign() == 0
        return NotImplemented

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __hash__(self):
        if self.s == 0:
            return hash(self.r)
        return hash((self.r, self.s, self.d))

    def __repr__(self):
        if self.s == 0:
            return f"QuadValue({self.r})"
        return f"QuadValue({self.r} + {self.s}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {
            "r": format_rational(self.r),
            "s": format_rational(self.s),
            "D": format_rational(self.d),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuadValue":
        return cls(
            parse_rational(obj["r"]),
            parse_rational(obj["s"]),
            parse_rational(obj["D"]),
        )
