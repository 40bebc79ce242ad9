"""Sparse Laurent polynomials in t over tower scalars, and structures built on them.

Provides exact ring arithmetic with negative exponents, truncated power series
in an auxiliary variable x, reduced rational functions, and elements q + s*w of
the quadratic function-field extension w^2 = given Laurent polynomial.  The
canonical text format ("1/2*t^4 - 2*t^2 + 1/2") round-trips through
render_poly / parse_poly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exactnum import TowerContext, TowerScalar, _ONE, _ZERO


class LaurentPoly:
    """Map from integer exponent of t to nonzero TowerScalar coefficient."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: TowerContext, terms: Dict[int, TowerScalar]):
        self.ctx = ctx
        self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(ctx: TowerContext) -> "LaurentPoly":
        return LaurentPoly(ctx, {})

    @staticmethod
    def one(ctx: TowerContext) -> "LaurentPoly":
        return LaurentPoly(ctx, {0: ctx.one})

    @staticmethod
    def t(ctx: TowerContext, k: int = 1) -> "LaurentPoly":
        return LaurentPoly(ctx, {k: ctx.one})

    @staticmethod
    def monomial(ctx: TowerContext, k: int, coeff) -> "LaurentPoly":
        c = coeff if isinstance(coeff, TowerScalar) else ctx.from_rational(coeff)
        return LaurentPoly(ctx, {k: c} if c else {})

    @staticmethod
    def from_scalar(ctx: TowerContext, coeff) -> "LaurentPoly":
        return LaurentPoly.monomial(ctx, 0, coeff)

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> Optional[int]:
        """Top exponent, or None for the zero polynomial."""
        return max(self.terms) if self.terms else None

    def valuation(self) -> Optional[int]:
        """Bottom exponent, or None for the zero polynomial."""
        return min(self.terms) if self.terms else None

    def leading_coeff(self) -> TowerScalar:
        if not self.terms:
            return self.ctx.zero
        return self.terms[max(self.terms)]

    def coeff(self, k: int) -> TowerScalar:
        return self.terms.get(k, self.ctx.zero)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, TowerScalar)):
            other = LaurentPoly.from_scalar(self.ctx, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.sigma1, self.ctx.sigma2,
                     tuple(sorted((e, c.coords()) for e, c in self.terms.items()))))

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if self.ctx is not other.ctx and self.ctx != other.ctx:
                raise ValueError("tower context mismatch between Laurent polynomials")
            return other
        if isinstance(other, (int, Fraction, TowerScalar)):
            return LaurentPoly.from_scalar(self.ctx, other)
        raise TypeError(f"cannot coerce {type(other).__name__} into LaurentPoly")

    def __add__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return LaurentPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            cur = out.get(e)
            out[e] = -c if cur is None else cur - c
        return LaurentPoly(self.ctx, out)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction, TowerScalar)):
            return self.scale(other)
        o = self._coerce(other)
        if not self.terms or not o.terms:
            return LaurentPoly.zero(self.ctx)
        a, b = self.terms, o.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[int, TowerScalar] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                prod = c1 * c2
                cur = out.get(e)
                out[e] = prod if cur is None else cur + prod
        return LaurentPoly(self.ctx, out)

    __rmul__ = __mul__

    def scale(self, coeff) -> "LaurentPoly":
        c = coeff if isinstance(coeff, TowerScalar) else self.ctx.from_rational(coeff)
        if not c:
            return LaurentPoly.zero(self.ctx)
        return LaurentPoly(self.ctx, {e: v * c for e, v in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        if k == 0:
            return self
        return LaurentPoly(self.ctx, {e + k: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            ((e, c),) = self.terms.items()
            return LaurentPoly(self.ctx, {e * n: c ** n})
        result = LaurentPoly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly(self.ctx, {e - 1: c * e for e, c in self.terms.items() if e != 0})

    def monic(self) -> "LaurentPoly":
        if not self.terms:
            return self
        lc = self.leading_coeff()
        return self.scale(lc.inv())

    # -- evaluation -------------------------------------------------------------

    def eval_scalar(self, x: TowerScalar) -> TowerScalar:
        """Exact evaluation at t = x; x must be invertible if negative exponents occur."""
        total = self.ctx.zero
        for e, c in self.terms.items():
            total = total + c * (x ** e)
        return total

    def eval_float(self, t: float) -> float:
        return sum(c.to_float() * t ** e for e, c in self.terms.items())

    # -- rendering ----------------------------------------------------------------

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({render_poly(self)})"


# -- polynomial division, gcd, squarefree parts ------------------------------------


def poly_divmod(f: LaurentPoly, g: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division of genuine polynomials (nonnegative exponents)."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if (f.valuation() or 0) < 0 or g.valuation() < 0:
        raise ValueError("divmod requires nonnegative exponents")
    ctx = f.ctx
    dg = g.degree()
    lg_inv = g.leading_coeff().inv()
    q: Dict[int, TowerScalar] = {}
    r = f
    while r.terms and r.degree() >= dg:
        k = r.degree() - dg
        c = r.leading_coeff() * lg_inv
        q[k] = c
        r = r - g.shift(k).scale(c)
    return LaurentPoly(ctx, q), r


def exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact quotient f/g in the Laurent ring; raises if g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    vf, vg = f.valuation(), g.valuation()
    q, r = poly_divmod(f.shift(-vf), g.shift(-vg))
    if not r.is_zero():
        raise ValueError("polynomials do not divide exactly")
    return q.shift(vf - vg)


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    """True when g divides f exactly, t-power units ignored."""
    if f.is_zero():
        return True
    if g.is_zero():
        return False
    _, r = poly_divmod(f.shift(-f.valuation()), g.shift(-g.valuation()))
    return r.is_zero()


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Monic gcd of the polynomial parts, after clearing t-power units."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a = f.shift(-f.valuation()) if f.terms else f
    b = g.shift(-g.valuation()) if g.terms else g
    while b.terms:
        _, r = poly_divmod(a, b)
        # keep remainders monic so coefficient size stays controlled
        a, b = b, (r.monic() if r.terms else r)
    return a.monic()


def squarefree_decomposition(f: LaurentPoly) -> List[Tuple[LaurentPoly, int]]:
    """Yun decomposition [(factor, multiplicity)] of a nonzero polynomial.

    The t-power content is reported as an explicit (t, multiplicity) entry;
    remaining factors are monic, squarefree and pairwise coprime.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if f.valuation() < 0:
        raise ValueError("squarefree decomposition requires a polynomial")
    out: List[Tuple[LaurentPoly, int]] = []
    v = f.valuation()
    if v > 0:
        out.append((LaurentPoly.t(f.ctx), v))
        f = f.shift(-v)
    f = f.monic()
    if f.degree() == 0:
        return out
    fp = f.derivative()
    u = poly_gcd(f, fp)
    vpart = exact_div(f, u)
    w = exact_div(fp, u)
    i = 1
    while vpart.degree() > 0:
        w = w - vpart.derivative()
        g = poly_gcd(vpart, w) if w.terms else vpart.monic()
        if g.degree() > 0:
            out.append((g, i))
        vpart = exact_div(vpart, g)
        w = exact_div(w, g) if w.terms else w
        i += 1
    return out


def compose_qpoly(coeffs: Sequence[Fraction], arg: LaurentPoly) -> LaurentPoly:
    """Evaluate a dense rational-coefficient polynomial at a Laurent argument (Horner)."""
    ctx = arg.ctx
    result = LaurentPoly.zero(ctx)
    for c in reversed(coeffs):
        result = result * arg + LaurentPoly.from_scalar(ctx, c)
    return result


# -- truncated power series ----------------------------------------------------------


class TruncSeries:
    """Power series in x with LaurentPoly coefficients, truncated at a fixed order."""

    __slots__ = ("ctx", "order", "coeffs")

    def __init__(self, ctx: TowerContext, coeffs: Sequence[LaurentPoly], order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(f"need {order + 1} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.order = order
        self.coeffs = coeffs

    @staticmethod
    def zero(ctx: TowerContext, order: int) -> "TruncSeries":
        return TruncSeries(ctx, [LaurentPoly.zero(ctx)] * (order + 1), order)

    @staticmethod
    def from_polys(polys: Sequence[LaurentPoly]) -> "TruncSeries":
        return TruncSeries(polys[0].ctx, list(polys), len(polys) - 1)

    def _check(self, other: "TruncSeries") -> None:
        if self.order != other.order:
            raise ValueError("series order mismatch")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        out = [LaurentPoly.zero(self.ctx) for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ctx, out, self.order)

    def scale(self, poly: LaurentPoly) -> "TruncSeries":
        return TruncSeries(self.ctx, [c * poly for c in self.coeffs], self.order)

    def x_times_ddx(self) -> "TruncSeries":
        """x * d/dx, which preserves the truncation order."""
        return TruncSeries(self.ctx, [c * k for k, c in enumerate(self.coeffs)], self.order)

    def ddx(self) -> "TruncSeries":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        return TruncSeries(self.ctx, [self.coeffs[k] * k for k in range(1, self.order + 1)],
                           self.order - 1)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.ctx, self.coeffs[: order + 1], order)

    def is_zero_through(self, order: int) -> bool:
        return all(c.is_zero() for c in self.coeffs[: order + 1])

    def agrees_through(self, other: "TruncSeries", order: int) -> bool:
        return all(a == b for a, b in zip(self.coeffs[: order + 1], other.coeffs[: order + 1]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))


# -- reduced rational functions ----------------------------------------------------


class RationalFunc:
    """Quotient num/den, den a monic polynomial with nonzero constant term, gcd-reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        ctx = num.ctx
        if num.is_zero():
            self.num = num
            self.den = LaurentPoly.one(ctx)
            return
        vd = den.valuation()
        num = num.shift(-vd)
        den = den.shift(-vd)
        vn = num.valuation()
        nn = num.shift(-vn)
        g = poly_gcd(nn, den)
        if g.degree() > 0:
            nn = exact_div(nn, g)
            den = exact_div(den, g)
        lc_inv = den.leading_coeff().inv()
        self.num = nn.scale(lc_inv).shift(vn)
        self.den = den.scale(lc_inv)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RationalFunc":
        return RationalFunc(p, LaurentPoly.one(p.ctx))

    @property
    def ctx(self) -> TowerContext:
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den == LaurentPoly.one(self.ctx)

    def as_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def _coerce(self, other) -> "RationalFunc":
        if isinstance(other, RationalFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunc.from_poly(other)
        if isinstance(other, (int, Fraction, TowerScalar)):
            return RationalFunc.from_poly(LaurentPoly.from_scalar(self.ctx, other))
        raise TypeError(f"cannot coerce {type(other).__name__} into RationalFunc")

    def __add__(self, other) -> "RationalFunc":
        o = self._coerce(other)
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunc":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunc":
        o = self._coerce(other)
        return RationalFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunc":
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunc":
        return self._coerce(other) / self

    def derivative(self) -> "RationalFunc":
        return RationalFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                            self.den * self.den)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (LaurentPoly, int, Fraction, TowerScalar)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __str__(self) -> str:
        if self.is_poly():
            return render_poly(self.num)
        return f"({render_poly(self.num)}) / ({render_poly(self.den)})"

    __repr__ = __str__


# -- quadratic function-field elements q + s*w, w^2 a fixed Laurent polynomial -------


class AlgFuncElem:
    """Element q + s*w with w^2 = wsq, q and s rational functions."""

    __slots__ = ("wsq", "q", "s")

    def __init__(self, wsq: LaurentPoly, q: RationalFunc, s: RationalFunc):
        self.wsq = wsq
        self.q = q
        self.s = s

    @staticmethod
    def pure(wsq: LaurentPoly, q) -> "AlgFuncElem":
        qq = q if isinstance(q, RationalFunc) else RationalFunc.from_poly(
            q if isinstance(q, LaurentPoly) else LaurentPoly.from_scalar(wsq.ctx, q))
        return AlgFuncElem(wsq, qq, RationalFunc.from_poly(LaurentPoly.zero(wsq.ctx)))

    @staticmethod
    def w_times(wsq: LaurentPoly, s) -> "AlgFuncElem":
        ss = s if isinstance(s, RationalFunc) else RationalFunc.from_poly(
            s if isinstance(s, LaurentPoly) else LaurentPoly.from_scalar(wsq.ctx, s))
        return AlgFuncElem(wsq, RationalFunc.from_poly(LaurentPoly.zero(wsq.ctx)), ss)

    def _check(self, other: "AlgFuncElem") -> None:
        if self.wsq != other.wsq:
            raise ValueError("algebraic elements over different quadratic relations")

    def __add__(self, other: "AlgFuncElem") -> "AlgFuncElem":
        self._check(other)
        return AlgFuncElem(self.wsq, self.q + other.q, self.s + other.s)

    def __sub__(self, other: "AlgFuncElem") -> "AlgFuncElem":
        self._check(other)
        return AlgFuncElem(self.wsq, self.q - other.q, self.s - other.s)

    def __mul__(self, other) -> "AlgFuncElem":
        if isinstance(other, (int, Fraction, TowerScalar, LaurentPoly, RationalFunc)):
            o = self.q._coerce(other)
            return AlgFuncElem(self.wsq, self.q * o, self.s * o)
        self._check(other)
        q = self.q * other.q + self.s * other.s * self.wsq
        s = self.q * other.s + self.s * other.q
        return AlgFuncElem(self.wsq, q, s)

    __rmul__ = __mul__

    def conj_w(self) -> "AlgFuncElem":
        return AlgFuncElem(self.wsq, self.q, -self.s)

    def derivative(self) -> "AlgFuncElem":
        """d/dt, using w' = wsq' * w / (2*wsq)."""
        wfactor = RationalFunc(self.wsq.derivative(), self.wsq * 2)
        return AlgFuncElem(self.wsq, self.q.derivative(),
                           self.s.derivative() + self.s * wfactor)

    def is_rational(self) -> bool:
        return self.s.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgFuncElem):
            return NotImplemented
        return self.wsq == other.wsq and self.q == other.q and self.s == other.s

    def __str__(self) -> str:
        return f"({self.q}) + ({self.s})*w"

    __repr__ = __str__


def algfunc_derive(elem: AlgFuncElem, dmul: RationalFunc) -> AlgFuncElem:
    """One application of the derivation D = dmul * d/dt."""
    return elem.derivative() * dmul


# -- canonical text format -----------------------------------------------------------


def _coeff_repr(c: TowerScalar) -> Tuple[int, str]:
    """(sign, unsigned text) for a coefficient; composite scalars are parenthesized."""
    nonzero = [(coeff, label) for coeff, label in
               ((c.c00, ""), (c.c10, "s1"), (c.c01, "s2"), (c.c11, "s1*s2")) if coeff]
    if len(nonzero) == 1:
        coeff, label = nonzero[0]
        sign = -1 if coeff < 0 else 1
        mag = abs(coeff)
        if not label:
            return sign, str(mag)
        if mag == 1:
            return sign, label
        return sign, f"{mag}*{label}"
    return 1, f"({c})"


def render_poly(p: LaurentPoly) -> str:
    """Canonical text: terms in decreasing exponent, e.g. "1/2*t^4 - 2*t^2 + 1/2"."""
    if p.is_zero():
        return "0"
    chunks: List[str] = []
    for e in sorted(p.terms, reverse=True):
        sign, text = _coeff_repr(p.terms[e])
        if e == 0:
            body = text
        else:
            tpart = "t" if e == 1 else f"t^{e}"
            body = tpart if text == "1" else f"{text}*{tpart}"
        if not chunks:
            chunks.append(f"-{body}" if sign < 0 else body)
        else:
            chunks.append(f"- {body}" if sign < 0 else f"+ {body}")
    return " ".join(chunks)


class _Tokens:
    def __init__(self, text: str):
        self.toks: List[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum()):
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif ch in "+-*/^()":
                self.toks.append(ch)
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in polynomial text")
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of polynomial text")
        self.pos += 1
        return tok


def _parse_sum(tk: _Tokens, ctx: TowerContext) -> LaurentPoly:
    sign = 1
    while tk.peek() in ("+", "-"):
        if tk.next() == "-":
            sign = -sign
    total = _parse_term(tk, ctx)
    if sign < 0:
        total = -total
    while tk.peek() in ("+", "-"):
        sign = 1
        while tk.peek() in ("+", "-"):
            if tk.next() == "-":
                sign = -sign
        term = _parse_term(tk, ctx)
        total = total + (-term if sign < 0 else term)
    return total


def _parse_term(tk: _Tokens, ctx: TowerContext) -> LaurentPoly:
    result = _parse_factor(tk, ctx)
    while tk.peek() == "*":
        tk.next()
        result = result * _parse_factor(tk, ctx)
    return result


def _parse_factor(tk: _Tokens, ctx: TowerContext) -> LaurentPoly:
    tok = tk.next()
    if tok == "(":
        inner = _parse_sum(tk, ctx)
        if tk.next() != ")":
            raise ValueError("unbalanced parenthesis in polynomial text")
        return inner
    if tok.isdigit():
        num = int(tok)
        if tk.peek() == "/":
            tk.next()
            den = tk.next()
            if not den.isdigit():
                raise ValueError(f"expected integer denominator, got {den!r}")
            return LaurentPoly.from_scalar(ctx, Fraction(num, int(den)))
        return LaurentPoly.from_scalar(ctx, Fraction(num))
    if tok == "s1":
        return LaurentPoly.from_scalar(ctx, ctx.s1)
    if tok == "s2":
        return LaurentPoly.from_scalar(ctx, ctx.s2)
    if tok == "t":
        if tk.peek() == "^":
            tk.next()
            sign = 1
            exp_tok = tk.next()
            if exp_tok == "-":
                sign = -1
                exp_tok = tk.next()
            if not exp_tok.isdigit():
                raise ValueError(f"expected integer exponent, got {exp_tok!r}")
            return LaurentPoly.t(ctx, sign * int(exp_tok))
        return LaurentPoly.t(ctx)
    raise ValueError(f"unexpected token {tok!r} in polynomial text")


def parse_poly(text: str, ctx: TowerContext) -> LaurentPoly:
    """Parse the canonical polynomial grammar over a given tower context.

    Grammar: signed sums of terms, a term being '*'-joined factors, a factor
    being a rational number, s1, s2, t with optional integer ^exponent, or a
    parenthesized sum.
    """
    tk = _Tokens(text)
    if tk.peek() is None:
        raise ValueError("empty polynomial text")
    result = _parse_sum(tk, ctx)
    if tk.peek() is not None:
        raise ValueError(f"trailing tokens in polynomial text: {tk.peek()!r}")
    return result
