"""Second-order operators annihilating the families, and their singular-point analysis.

Operators are stored as exact coefficient triples (c2, c1, c0) acting as
c2*y'' + c1*y' + c0*y, cleared of any common t-power so the coefficients are
genuine polynomials.  Regularity of singular points is decided by exact
divisibility on squarefree factors, never by numerical root-finding; the
numeric root list exists for reporting only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .curvering import PellConfig, djkm_config
from .laurent import LaurentPoly, divides, squarefree_decomposition

logger = logging.getLogger(__name__)


class OdeKind(Enum):
    GENERAL_A = "general_first"
    GENERAL_B = "general_second"
    DJKM_A = "quartic_first"
    DJKM_B = "quartic_second"


@dataclass
class OdeOperator:
    """Coefficients of c2*y'' + c1*y' + c0*y for the index-n family member."""

    c2: LaurentPoly
    c1: LaurentPoly
    c0: LaurentPoly
    n: int
    kind: OdeKind
    variant: str = "primary"

    def __post_init__(self):
        if self.c2.is_zero():
            raise ValueError("leading coefficient must be nonzero")
        vals = [c.valuation() for c in (self.c2, self.c1, self.c0) if not c.is_zero()]
        shift = -min(vals)
        if shift:
            self.c2 = self.c2.shift(shift)
            self.c1 = self.c1.shift(shift)
            self.c0 = self.c0.shift(shift)

    def apply(self, y: LaurentPoly) -> LaurentPoly:
        y1 = y.derivative()
        return self.c2 * y1.derivative() + self.c1 * y1 + self.c0 * y

    def annihilates(self, y: LaurentPoly) -> bool:
        return self.apply(y).is_zero()


def apply(op: OdeOperator, y: LaurentPoly) -> LaurentPoly:
    return op.apply(y)


# -- operators for a general configuration with norm t^(2r) ---------------------------


def _general_parts(config: PellConfig):
    r = config.r
    if r is None:
        raise ValueError("operator construction needs norm exactly t^(2r)")
    a1 = config.a1
    ctx = config.tower
    a1p = a1.derivative()
    a1pp = a1p.derivative()
    e_poly = a1p.shift(1) - a1.scale(r)
    w_poly = LaurentPoly.t(ctx, 2 * r) - a1 * a1
    m_poly = (a1pp.shift(1) - a1p.scale(2 * r)).shift(1) + a1.scale(r * (r + 1))
    return r, a1, e_poly, w_poly, m_poly


def _assemble(config: PellConfig, n: int, cross: int, eigen: int,
              displayed_b: bool) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """Shared assembly; cross is the first-derivative a1-multiplier (1 or 3),
    eigen the zeroth-order eigenvalue factor (n^2 or n*(n+2))."""
    r, a1, e, w, m = _general_parts(config)
    t1 = LaurentPoly.t(config.tower)
    we = w * e
    e2 = e * e
    c2 = we.shift(2)
    rn = r * n
    if displayed_b:
        # first and last r*n-terms carry an extra factor of E in this layout
        c1 = -((t1 * w * e2).scale(2 * rn) + (a1 * e2).shift(1).scale(cross) + (t1 * w) * m)
        c0 = (e2 * e).scale(eigen) + (a1 * e2).scale(cross * rn) + (w * m).scale(rn) \
            + (w * e2).scale(rn * (rn + 1))
    else:
        c1 = -(we.shift(1).scale(2 * rn) + (a1 * e2).shift(1).scale(cross) + (t1 * w) * m)
        c0 = (e2 * e).scale(eigen) + (a1 * e2).scale(cross * rn) + (w * m).scale(rn) \
            + we.scale(rn * (rn + 1))
    return c2, c1, c0


def _family_b(config: PellConfig, upto: int) -> List[LaurentPoly]:
    seq = [config.b0]
    two_a1 = config.a1 * 2
    for k in range(1, upto + 1):
        nxt = two_a1 * seq[-1]
        if k >= 2:
            nxt = nxt - config.pn_times(seq[-2])
        seq.append(nxt)
    return seq


_b_layout_cache: Dict[int, Tuple[PellConfig, bool]] = {}


def _use_primary_b_layout(config: PellConfig) -> bool:
    """Decide once per configuration whether the primary second-kind coefficient
    layout annihilates; fall back to the transform-derived layout otherwise."""
    key = id(config)
    cached = _b_layout_cache.get(key)
    if cached is not None and cached[0] is config:
        return cached[1]
    bseq = _family_b(config, 3)
    ok = True
    for n in (1, 2, 3):
        c2, c1, c0 = _assemble(config, n, cross=3, eigen=n * (n + 2), displayed_b=True)
        op = OdeOperator(c2, c1, c0, n, OdeKind.GENERAL_B, "primary")
        if not op.annihilates(bseq[n]):
            ok = False
            break
    if not ok:
        logger.warning("primary second-kind operator layout fails annihilation; "
                       "using the change-of-variables derivation instead")
    _b_layout_cache[key] = (config, ok)
    return ok


def build_general(config: PellConfig, n: int, kind: OdeKind) -> OdeOperator:
    """Operator annihilating a_n (GENERAL_A) or b_n (GENERAL_B) for norm t^(2r)."""
    if kind == OdeKind.GENERAL_A:
        c2, c1, c0 = _assemble(config, n, cross=1, eigen=n * n, displayed_b=False)
        return OdeOperator(c2, c1, c0, n, kind)
    if kind == OdeKind.GENERAL_B:
        if config.b0.degree() != 0 or config.b0.valuation() != 0:
            raise ValueError("second-kind operator requires constant b0")
        if _use_primary_b_layout(config):
            c2, c1, c0 = _assemble(config, n, cross=3, eigen=n * (n + 2), displayed_b=True)
            return OdeOperator(c2, c1, c0, n, kind, "primary")
        c2, c1, c0 = _assemble(config, n, cross=3, eigen=n * (n + 2), displayed_b=False)
        return OdeOperator(c2, c1, c0, n, kind, "transform-derived")
    raise ValueError("build_general handles the general kinds only")


def build_general_b_layouts(config: PellConfig, n: int) -> Tuple[OdeOperator, OdeOperator]:
    """Both second-kind coefficient layouts (primary, transform-derived), untested."""
    p = _assemble(config, n, cross=3, eigen=n * (n + 2), displayed_b=True)
    d = _assemble(config, n, cross=3, eigen=n * (n + 2), displayed_b=False)
    return (OdeOperator(*p, n, OdeKind.GENERAL_B, "primary"),
            OdeOperator(*d, n, OdeKind.GENERAL_B, "transform-derived"))


# -- the quartic-configuration operators with rational-in-beta coefficients ------------


def build_djkm(beta, n: int, kind: OdeKind,
               config: Optional[PellConfig] = None) -> OdeOperator:
    """The two explicit operators of the quartic setting.

    Coefficients are rational in beta.  The first-kind coefficients are the
    specialization of the general operator to this configuration (clearing the
    common scalar); the second-kind triple is the classical seventh-degree one.
    """
    beta = Fraction(beta)
    if beta == 1 or beta == -1:
        raise ValueError("beta must differ from 1 and -1")
    if config is None:
        config = djkm_config(beta)
    elif config.beta != beta:
        raise ValueError("configuration does not match beta")
    ctx = config.tower
    c2 = LaurentPoly(ctx, {
        7: ctx.one,
        5: ctx.from_rational(1 - 2 * beta),
        3: ctx.from_rational(1 - 2 * beta),
        1: ctx.one,
    })
    if kind == OdeKind.DJKM_A:
        c1 = LaurentPoly(ctx, {
            6: ctx.from_rational(1 - 2 * n),
            4: ctx.from_rational((4 * beta - 2) * n + 3),
            2: ctx.from_rational((4 * beta - 2) * n - 4 * beta - 1),
            0: ctx.from_rational(1 - 2 * n),
        })
        c0 = LaurentPoly(ctx, {
            3: ctx.from_rational(-2 * (beta + 1) * n * (n + 1)),
            1: ctx.from_rational(-2 * (beta + 1) * n * (n - 1)),
        })
    elif kind == OdeKind.DJKM_B:
        c1 = LaurentPoly(ctx, {
            6: ctx.from_rational(3 - 2 * n),
            4: ctx.from_rational((4 * beta - 2) * n + 5),
            2: ctx.from_rational((4 * beta - 2) * n - 4 * beta - 3),
            0: ctx.from_rational(-(2 * n + 1)),
        })
        c0 = LaurentPoly(ctx, {
            5: ctx.from_rational(-4 * n),
            3: ctx.from_rational(-2 * n * (beta + (beta + 1) * n + 5)),
            1: ctx.from_rational(-2 * n * (-beta + (beta + 1) * n + 1)),
        })
    else:
        raise ValueError("build_djkm handles the quartic kinds only")
    return OdeOperator(c2, c1, c0, n, kind)


# -- singular point classification ------------------------------------------------------


@dataclass
class SingularReport:
    """Squarefree factors of the leading coefficient with their regularity verdicts."""

    finite_factors: List[Tuple[LaurentPoly, int, bool]]
    infinity_regular: bool
    fuchsian: bool
    degrees: Tuple[int, int, int]


def classify_fuchsian(op: OdeOperator) -> SingularReport:
    """Pole-order regularity test on exact squarefree factors.

    A factor f of c2 with multiplicity m is regular iff f^(m-1) divides c1 and
    f^(max(m-2,0)) divides c0; infinity is regular iff deg c1 <= deg c2 - 1 and
    deg c0 <= deg c2 - 2.  The t-power factor is handled through valuations.
    """
    c2, c1, c0 = op.c2, op.c1, op.c0
    if c2.is_zero():
        raise ValueError("leading coefficient is zero")
    factors: List[Tuple[LaurentPoly, int, bool]] = []
    v2 = c2.valuation()
    if v2 > 0:
        v1 = c1.valuation() if c1 else v2
        v0 = c0.valuation() if c0 else v2
        regular0 = v1 >= v2 - 1 and v0 >= v2 - 2
        factors.append((LaurentPoly.t(c2.ctx), v2, regular0))
    core = c2.shift(-v2)
    if core.degree() > 0:
        for f, mult in squarefree_decomposition(core):
            reg = True
            if mult >= 2:
                reg = divides(f ** (mult - 1), c1)
            if reg and mult >= 3:
                reg = divides(f ** (mult - 2), c0)
            factors.append((f, mult, reg))
    d2 = c2.degree()
    d1 = c1.degree()
    d0 = c0.degree()
    infinity_regular = (d1 is None or d1 <= d2 - 1) and (d0 is None or d0 <= d2 - 2)
    fuchsian = infinity_regular and all(reg for _, _, reg in factors)
    return SingularReport(factors, infinity_regular, fuchsian,
                          (d2, -1 if d1 is None else d1, -1 if d0 is None else d0))


def singular_points_numeric(op: OdeOperator) -> List[complex]:
    """Complex roots of c2 by companion-matrix eigenvalues; reporting only."""
    c2 = op.c2
    if c2.valuation() < 0:
        raise ValueError("leading coefficient must be a polynomial")
    deg = c2.degree()
    dense = [c2.coeff(k).to_float() for k in range(deg, -1, -1)]
    roots = np.roots(dense)
    return sorted((complex(z) for z in roots),
                  key=lambda z: (round(z.real, 10), round(z.imag, 10)))
