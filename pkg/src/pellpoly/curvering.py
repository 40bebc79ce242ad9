"""The ring of pairs f + g*u with u^2 = p, Pell configurations, and its unit group.

A PellConfig fixes (p, a1, b0) together with the norm a1^2 - b0^2*p.  When that
norm is exactly t^(2r) the exponent r unlocks the Chebyshev-style closed forms;
otherwise the family generation still works but r-dependent features stay off.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from .exactnum import Fraction as _Fraction
from .exactnum import TowerContext, TowerScalar, tower_new
from .laurent import LaurentPoly, poly_gcd


class PellConfig:
    """Immutable bundle (p, a1, b0, r) over a tower context."""

    __slots__ = ("tower", "p", "a1", "b0", "pell_norm", "r", "beta",
                 "degenerate", "separable_p")

    def __init__(self, p: LaurentPoly, a1: LaurentPoly, b0: LaurentPoly,
                 beta: Optional[Fraction] = None):
        if p.is_zero():
            raise ValueError("p must be nonzero")
        self.tower = p.ctx
        self.p = p
        self.a1 = a1
        self.b0 = b0
        self.beta = beta
        self.pell_norm = a1 * a1 - b0 * b0 * p
        self.degenerate = self.pell_norm.is_zero()
        self.r = self._detect_r()
        self.separable_p = self._is_separable(p)

    def _detect_r(self) -> Optional[int]:
        pn = self.pell_norm
        if pn.is_monomial():
            ((e, c),) = pn.terms.items()
            if e >= 0 and e % 2 == 0 and c == self.tower.one:
                return e // 2
        return None

    @staticmethod
    def _is_separable(p: LaurentPoly) -> bool:
        v = p.valuation()
        if v > 1:
            return False  # t = 0 is a repeated root
        cleared = p.shift(-v)
        if cleared.degree() == 0:
            return True
        return poly_gcd(cleared, cleared.derivative()).degree() == 0

    @property
    def is_djkm(self) -> bool:
        return self.beta is not None

    def pn_power(self, n: int) -> LaurentPoly:
        """pell_norm ** n, via a shift when the norm is the monomial t^(2r)."""
        if self.r is not None:
            return LaurentPoly.t(self.tower, 2 * self.r * n) if n else LaurentPoly.one(self.tower)
        return self.pell_norm ** n

    def pn_times(self, q: LaurentPoly, n: int = 1) -> LaurentPoly:
        """q * pell_norm ** n."""
        if self.r is not None:
            return q.shift(2 * self.r * n)
        return q * self.pn_power(n)

    def to_dict(self) -> dict:
        from .laurent import render_poly
        return {
            "beta": None if self.beta is None else str(self.beta),
            "p": render_poly(self.p),
            "a1": render_poly(self.a1),
            "b0": render_poly(self.b0),
            "sigma1": str(self.tower.sigma1),
            "sigma2": str(self.tower.sigma2),
            "r": self.r,
        }


def djkm_config(beta) -> PellConfig:
    """Configuration for the quartic p = (t^4 - 2*beta*t^2 + 1)/(beta^2 - 1)."""
    beta = Fraction(beta)
    if beta == 1 or beta == -1:
        raise ValueError("beta must differ from 1 and -1")
    sigma1 = 2 * (beta - 1)
    sigma2 = (beta + 1) / 2
    ctx = tower_new(sigma1, sigma2)
    denom = beta * beta - 1
    p = LaurentPoly(ctx, {
        4: ctx.from_rational(Fraction(1) / denom),
        2: ctx.from_rational(-2 * beta / denom),
        0: ctx.from_rational(Fraction(1) / denom),
    })
    inv_root = ctx.sqrt_scalar(sigma1).inv()
    a1 = LaurentPoly(ctx, {2: inv_root, 0: -inv_root})
    b0 = LaurentPoly.from_scalar(ctx, ctx.s2)
    cfg = PellConfig(p, a1, b0, beta=beta)
    if cfg.r != 1:
        raise ArithmeticError("norm of the quartic configuration is not t^2")
    return cfg


def custom_config(p: LaurentPoly, a1: LaurentPoly, b0: LaurentPoly) -> PellConfig:
    """Configuration from user-supplied polynomials over a shared context."""
    if p.ctx != a1.ctx or p.ctx != b0.ctx:
        raise ValueError("p, a1, b0 must share one tower context")
    return PellConfig(p, a1, b0)


def djkm_q(config: PellConfig) -> LaurentPoly:
    """The polynomial q with q^2 - 1 = p in the quartic setting."""
    if not config.is_djkm:
        raise ValueError("q is only defined for the quartic configuration")
    ctx = config.tower
    beta = config.beta
    inv_root = ctx.sqrt_scalar(beta * beta - 1).inv()
    return LaurentPoly(ctx, {2: inv_root, 0: -beta * inv_root})


class CurveElem:
    """Element f + g*u of the curve ring, with u^2 = config.p."""

    __slots__ = ("f", "g", "config")

    def __init__(self, f: LaurentPoly, g: LaurentPoly, config: PellConfig):
        self.f = f
        self.g = g
        self.config = config

    def _check(self, other: "CurveElem") -> None:
        if self.config is not other.config and self.config.to_dict() != other.config.to_dict():
            raise ValueError("curve elements over different configurations")

    def __add__(self, other: "CurveElem") -> "CurveElem":
        self._check(other)
        return CurveElem(self.f + other.f, self.g + other.g, self.config)

    def __sub__(self, other: "CurveElem") -> "CurveElem":
        self._check(other)
        return CurveElem(self.f - other.f, self.g - other.g, self.config)

    def __neg__(self) -> "CurveElem":
        return CurveElem(-self.f, -self.g, self.config)

    def __mul__(self, other) -> "CurveElem":
        if isinstance(other, (int, Fraction, TowerScalar, LaurentPoly)):
            return CurveElem(self.f * other, self.g * other, self.config)
        self._check(other)
        f = self.f * other.f + self.g * other.g * self.config.p
        g = self.f * other.g + self.g * other.f
        return CurveElem(f, g, self.config)

    __rmul__ = __mul__

    def conj(self) -> "CurveElem":
        return CurveElem(self.f, -self.g, self.config)

    def norm(self) -> LaurentPoly:
        return self.f * self.f - self.g * self.g * self.config.p

    def inv(self) -> "CurveElem":
        """Inverse, defined when the norm is an invertible monomial c*t^k."""
        nrm = self.norm()
        if not nrm.is_monomial():
            raise ValueError("element is not a unit with monomial norm")
        ((e, c),) = nrm.terms.items()
        scale = LaurentPoly.monomial(self.config.tower, -e, c.inv())
        return CurveElem(self.f * scale, -self.g * scale, self.config)

    def __pow__(self, n: int) -> "CurveElem":
        if n < 0:
            return self.inv() ** (-n)
        ctx = self.config.tower
        result = CurveElem(LaurentPoly.one(ctx), LaurentPoly.zero(ctx), self.config)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def pow_iterative(self, n: int) -> "CurveElem":
        """Plain repeated multiplication; the slow cross-check for binary powering."""
        ctx = self.config.tower
        result = CurveElem(LaurentPoly.one(ctx), LaurentPoly.zero(ctx), self.config)
        for _ in range(n):
            result = result * self
        return result

    def is_one(self) -> bool:
        return self.g.is_zero() and self.f == LaurentPoly.one(self.config.tower)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveElem):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __str__(self) -> str:
        return f"({self.f}) + ({self.g})*u"

    __repr__ = __str__


def one_elem(config: PellConfig) -> CurveElem:
    ctx = config.tower
    return CurveElem(LaurentPoly.one(ctx), LaurentPoly.zero(ctx), config)


def t_elem(config: PellConfig, k: int = 1) -> CurveElem:
    ctx = config.tower
    return CurveElem(LaurentPoly.t(ctx, k), LaurentPoly.zero(ctx), config)


def djkm_units(config: PellConfig) -> Tuple[CurveElem, CurveElem, CurveElem, CurveElem]:
    """The four canonical units of the quartic configuration.

    Exact relations (fixed positive-root embedding): u0*conj(u0) = 1,
    u1*conj(u1) = u2*conj(u2) = t^2, u1*u2 = t^2*u0 and u1*conj(u2) = conj(u3).
    """
    if not config.is_djkm:
        raise ValueError("units require the quartic configuration")
    ctx = config.tower
    beta = config.beta
    one = LaurentPoly.one(ctx)
    inv_prod_root = ctx.sqrt_scalar(beta * beta - 1).inv()
    lam0 = CurveElem(djkm_q(config), one, config)
    inv_2bp1 = ctx.sqrt_scalar(2 * (beta + 1)).inv()
    root_half_bm1 = ctx.sqrt_scalar((beta - 1) / 2)
    lam1 = CurveElem(LaurentPoly(ctx, {2: inv_2bp1, 0: inv_2bp1}),
                     LaurentPoly.from_scalar(ctx, root_half_bm1), config)
    lam2 = CurveElem(config.a1, config.b0, config)
    lam3 = CurveElem(LaurentPoly(ctx, {2: beta * inv_prod_root, 0: -inv_prod_root}),
                     one, config)
    return lam0, lam1, lam2, lam3


class UnitExponents(NamedTuple):
    scalar: TowerScalar
    t_exp: int
    e1: int
    e2: int


def unit_exponent_form(x: CurveElem, bound: int = 6) -> Optional[UnitExponents]:
    """Express x as c * t^i * lam1^j * lam2^k, searching |j| + |k| <= 2*bound.

    Returns the decomposition with minimal |j| + |k|, re-verified by exact
    multiplication, or None when x is not reachable inside the search box.
    """
    config = x.config
    _, lam1, lam2, _ = djkm_units(config)
    pow1 = {0: one_elem(config)}
    pow2 = {0: one_elem(config)}

    def power(cache, base, k):
        if k not in cache:
            if k > 0:
                cache[k] = power(cache, base, k - 1) * base
            else:
                cache[k] = power(cache, base, k + 1) * base.inv()
        return cache[k]

    for total in range(0, 2 * bound + 1):
        for j in range(-min(total, bound), min(total, bound) + 1):
            rem = total - abs(j)
            if rem > bound:
                continue
            for k in ((0,) if rem == 0 else (rem, -rem)):
                y = power(pow1, lam1, -j) * power(pow2, lam2, -k) * x
                if not y.g.is_zero() or not y.f.is_monomial():
                    continue
                ((i, c),) = y.f.terms.items()
                candidate = (power(pow1, lam1, j) * power(pow2, lam2, k)
                             * LaurentPoly.monomial(config.tower, i, c))
                if candidate == x:
                    return UnitExponents(c, i, j, k)
    return None
