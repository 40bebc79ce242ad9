"""Exact coefficient scalars: rationals and the tower Q(sqrt(sigma1), sqrt(sigma2)).

Scalars are coordinates on the basis {1, s1, s2, s1*s2} with s1^2 = sigma1 and
s2^2 = sigma2.  Whenever sigma1, sigma2 or their product is a perfect rational
square, the corresponding generator is collapsed at construction time so the
algebra is always a field.  All values are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse "n" or "n/d" into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of q, or None when q is not a perfect rational square."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    if rn * rn != q.numerator:
        return None
    rd = math.isqrt(q.denominator)
    if rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


class TowerContext:
    """Carrier for the two radicands and their collapse data.

    collapsed1 / collapsed2 hold exact rational roots when sigma1 / sigma2 are
    perfect squares.  When neither is a square but sigma1*sigma2 is, `paired`
    holds rho = sqrt(sigma1*sigma2)/sigma1 so that s2 folds to rho*s1; without
    that fold the four-dimensional algebra would contain zero divisors.
    """

    __slots__ = ("sigma1", "sigma2", "collapsed1", "collapsed2", "paired")

    def __init__(self, sigma1: Fraction, sigma2: Fraction):
        sigma1 = Fraction(sigma1)
        sigma2 = Fraction(sigma2)
        if sigma1 == 0 or sigma2 == 0:
            raise ValueError("radicands must be nonzero")
        self.sigma1 = sigma1
        self.sigma2 = sigma2
        self.collapsed1 = rational_sqrt(sigma1)
        self.collapsed2 = rational_sqrt(sigma2)
        self.paired: Optional[Fraction] = None
        if self.collapsed1 is None and self.collapsed2 is None:
            prod_root = rational_sqrt(sigma1 * sigma2)
            if prod_root is not None:
                self.paired = prod_root / sigma1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TowerContext):
            return NotImplemented
        return self.sigma1 == other.sigma1 and self.sigma2 == other.sigma2

    def __hash__(self) -> int:
        return hash((self.sigma1, self.sigma2))

    def __repr__(self) -> str:
        return f"TowerContext(sigma1={self.sigma1}, sigma2={self.sigma2})"

    # -- scalar constructors -------------------------------------------------

    def scalar(self, c00=0, c10=0, c01=0, c11=0) -> "TowerScalar":
        return TowerScalar(self, Fraction(c00), Fraction(c10), Fraction(c01), Fraction(c11))

    @property
    def zero(self) -> "TowerScalar":
        return TowerScalar(self, _ZERO, _ZERO, _ZERO, _ZERO)

    @property
    def one(self) -> "TowerScalar":
        return TowerScalar(self, _ONE, _ZERO, _ZERO, _ZERO)

    @property
    def s1(self) -> "TowerScalar":
        return TowerScalar(self, _ZERO, _ONE, _ZERO, _ZERO)

    @property
    def s2(self) -> "TowerScalar":
        return TowerScalar(self, _ZERO, _ZERO, _ONE, _ZERO)

    def from_rational(self, q) -> "TowerScalar":
        return TowerScalar(self, Fraction(q), _ZERO, _ZERO, _ZERO)

    def sqrt_scalar(self, q: Fraction) -> "TowerScalar":
        """Scalar whose square is q, when q is expressible in this tower.

        Handles q itself a perfect square, q = square * sigma1, square * sigma2
        or square * sigma1 * sigma2 (sign included, so negative radicands work
        whenever a generator carries the sign).  Raises ValueError otherwise.
        """
        q = Fraction(q)
        if q == 0:
            return self.zero
        root = rational_sqrt(q)
        if root is not None:
            return self.from_rational(root)
        for axis, sig in ((1, self.sigma1), (2, self.sigma2), (3, self.sigma1 * self.sigma2)):
            ratio = rational_sqrt(q / sig)
            if ratio is not None:
                coords = [_ZERO, _ZERO, _ZERO, _ZERO]
                coords[axis] = ratio
                return TowerScalar(self, *coords)
        raise ValueError(f"sqrt({q}) is not an element of this tower")


def tower_new(sigma1, sigma2) -> TowerContext:
    """Build the coefficient tower for radicands sigma1, sigma2."""
    return TowerContext(Fraction(sigma1), Fraction(sigma2))


def _check_ctx(a: "TowerScalar", b: "TowerScalar") -> None:
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ValueError(f"tower context mismatch: {a.ctx} vs {b.ctx}")


class TowerScalar:
    """Element c00 + c10*s1 + c01*s2 + c11*s1*s2, normalized per the context collapses."""

    __slots__ = ("ctx", "c00", "c10", "c01", "c11")

    def __init__(self, ctx: TowerContext, c00: Fraction, c10: Fraction,
                 c01: Fraction, c11: Fraction):
        q1 = ctx.collapsed1
        if q1 is not None and (c10 or c11):
            c00 = c00 + q1 * c10
            c01 = c01 + q1 * c11
            c10 = _ZERO
            c11 = _ZERO
        q2 = ctx.collapsed2
        if q2 is not None and (c01 or c11):
            c00 = c00 + q2 * c01
            c10 = c10 + q2 * c11
            c01 = _ZERO
            c11 = _ZERO
        rho = ctx.paired
        if rho is not None and (c01 or c11):
            # s2 = rho*s1, hence s1*s2 = rho*sigma1
            c10 = c10 + rho * c01
            c00 = c00 + rho * ctx.sigma1 * c11
            c01 = _ZERO
            c11 = _ZERO
        self.ctx = ctx
        self.c00 = c00
        self.c10 = c10
        self.c01 = c01
        self.c11 = c11

    # -- predicates and views -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.c00 or self.c10 or self.c01 or self.c11)

    def is_rational(self) -> bool:
        return not (self.c10 or self.c01 or self.c11)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.c00

    def coords(self):
        return (self.c00, self.c10, self.c01, self.c11)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ctx.from_rational(other)
        if not isinstance(other, TowerScalar):
            return NotImplemented
        return (self.ctx == other.ctx and self.c00 == other.c00 and self.c10 == other.c10
                and self.c01 == other.c01 and self.c11 == other.c11)

    def __hash__(self) -> int:
        return hash((self.ctx.sigma1, self.ctx.sigma2, self.c00, self.c10, self.c01, self.c11))

    # -- ring operations -------------------------------------------------------

    def _coerce(self, other) -> "TowerScalar":
        if isinstance(other, TowerScalar):
            _check_ctx(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        raise TypeError(f"cannot coerce {type(other).__name__} into the tower")

    def __add__(self, other) -> "TowerScalar":
        o = self._coerce(other)
        a0, a1, a2, a3 = self.c00, self.c10, self.c01, self.c11
        b0, b1, b2, b3 = o.c00, o.c10, o.c01, o.c11
        return TowerScalar(self.ctx,
                           a0 + b0 if a0 and b0 else a0 or b0,
                           a1 + b1 if a1 and b1 else a1 or b1,
                           a2 + b2 if a2 and b2 else a2 or b2,
                           a3 + b3 if a3 and b3 else a3 or b3)

    __radd__ = __add__

    def __neg__(self) -> "TowerScalar":
        return TowerScalar(self.ctx, -self.c00, -self.c10, -self.c01, -self.c11)

    def __sub__(self, other) -> "TowerScalar":
        o = self._coerce(other)
        a0, a1, a2, a3 = self.c00, self.c10, self.c01, self.c11
        b0, b1, b2, b3 = o.c00, o.c10, o.c01, o.c11
        return TowerScalar(self.ctx,
                           a0 - b0 if b0 else a0,
                           a1 - b1 if b1 else a1,
                           a2 - b2 if b2 else a2,
                           a3 - b3 if b3 else a3)

    def __rsub__(self, other) -> "TowerScalar":
        return (-self) + other

    def __mul__(self, other) -> "TowerScalar":
        o = self._coerce(other)
        a0, a1, a2, a3 = self.c00, self.c10, self.c01, self.c11
        b0, b1, b2, b3 = o.c00, o.c10, o.c01, o.c11
        ctx = self.ctx
        # Fast path for the common rational * general case.
        if not (a1 or a2 or a3):
            if not a0:
                return ctx.zero
            return TowerScalar(ctx, a0 * b0, a0 * b1, a0 * b2, a0 * b3)
        if not (b1 or b2 or b3):
            if not b0:
                return ctx.zero
            return TowerScalar(ctx, b0 * a0, b0 * a1, b0 * a2, b0 * a3)
        g1, g2 = ctx.sigma1, ctx.sigma2
        c00 = a0 * b0 if a0 and b0 else _ZERO
        if a1 and b1:
            c00 = c00 + g1 * (a1 * b1)
        if a2 and b2:
            c00 = c00 + g2 * (a2 * b2)
        if a3 and b3:
            c00 = c00 + g1 * g2 * (a3 * b3)
        c10 = a0 * b1 if a0 and b1 else _ZERO
        if a1 and b0:
            c10 = c10 + a1 * b0
        if a2 and b3:
            c10 = c10 + g2 * (a2 * b3)
        if a3 and b2:
            c10 = c10 + g2 * (a3 * b2)
        c01 = a0 * b2 if a0 and b2 else _ZERO
        if a2 and b0:
            c01 = c01 + a2 * b0
        if a1 and b3:
            c01 = c01 + g1 * (a1 * b3)
        if a3 and b1:
            c01 = c01 + g1 * (a3 * b1)
        c11 = a0 * b3 if a0 and b3 else _ZERO
        if a3 and b0:
            c11 = c11 + a3 * b0
        if a1 and b2:
            c11 = c11 + a1 * b2
        if a2 and b1:
            c11 = c11 + a2 * b1
        return TowerScalar(ctx, c00, c10, c01, c11)

    __rmul__ = __mul__

    def conj2(self) -> "TowerScalar":
        """Conjugate s2 -> -s2."""
        return TowerScalar(self.ctx, self.c00, self.c10, -self.c01, -self.c11)

    def conj1(self) -> "TowerScalar":
        """Conjugate s1 -> -s1."""
        return TowerScalar(self.ctx, self.c00, -self.c10, self.c01, -self.c11)

    def inv(self) -> "TowerScalar":
        """Multiplicative inverse via successive conjugate rationalization.

        First rationalize in s2, then in s1.  A vanishing final norm with a
        nonzero input means the context was built around a degenerate radicand
        pair and signals misuse; properly constructed contexts are fields.
        """
        if not self:
            raise ZeroDivisionError("inverse of zero tower scalar")
        y = self.conj2()
        n1 = self * y
        z = n1.conj1()
        n0 = n1 * z
        if not n0.is_rational():  # cannot happen for consistent contexts
            raise ArithmeticError("norm did not rationalize; inconsistent context")
        if n0.c00 == 0:
            raise ZeroDivisionError("zero divisor encountered; degenerate tower context")
        scale = 1 / n0.c00
        w = y * z
        return TowerScalar(self.ctx, w.c00 * scale, w.c10 * scale, w.c01 * scale, w.c11 * scale)

    def __truediv__(self, other) -> "TowerScalar":
        o = self._coerce(other)
        return self * o.inv()

    def __rtruediv__(self, other) -> "TowerScalar":
        return self.inv() * other

    def __pow__(self, n: int) -> "TowerScalar":
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- embedding -------------------------------------------------------------

    def to_float(self) -> float:
        """Real embedding with s1, s2 mapped to the positive square roots."""
        val = float(self.c00)
        if self.c10:
            if self.ctx.sigma1 < 0:
                raise ValueError("negative radicand sigma1; no real embedding")
            val += float(self.c10) * math.sqrt(float(self.ctx.sigma1))
        if self.c01:
            if self.ctx.sigma2 < 0:
                raise ValueError("negative radicand sigma2; no real embedding")
            val += float(self.c01) * math.sqrt(float(self.ctx.sigma2))
        if self.c11:
            prod = self.ctx.sigma1 * self.ctx.sigma2
            if prod < 0:
                raise ValueError("negative radicand sigma1*sigma2; no real embedding")
            val += float(self.c11) * math.sqrt(float(prod))
        return val

    # -- rendering ---------------------------------------------------------------

    def _term_strings(self):
        parts = []
        for coeff, label in ((self.c00, ""), (self.c10, "s1"), (self.c01, "s2"), (self.c11, "s1*s2")):
            if not coeff:
                continue
            if not label:
                parts.append((coeff, str(abs(coeff))))
            elif abs(coeff) == 1:
                parts.append((coeff, label))
            else:
                parts.append((coeff, f"{abs(coeff)}*{label}"))
        return parts

    def __str__(self) -> str:
        parts = self._term_strings()
        if not parts:
            return "0"
        out = []
        for i, (coeff, text) in enumerate(parts):
            if i == 0:
                out.append(f"-{text}" if coeff < 0 else text)
            else:
                out.append(f"- {text}" if coeff < 0 else f"+ {text}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"TowerScalar({self})"


ScalarLike = Union[TowerScalar, Fraction, int]
