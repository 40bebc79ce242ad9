import random
from fractions import Fraction

import pytest

from pellpoly import (AlgFuncElem, LaurentPoly, RationalFunc, TruncSeries, compose_qpoly,
                      divides, exact_div, parse_poly, poly_divmod, poly_gcd, render_poly,
                      squarefree_decomposition, tower_new)
from pellpoly.laurent import algfunc_derive


@pytest.fixture
def ctx():
    return tower_new(4, 2)


def P(text, ctx):
    return parse_poly(text, ctx)


def test_basic_arithmetic(ctx):
    assert P("t^2-1", ctx) * P("t^2+1", ctx) == P("t^4-1", ctx)
    assert P("t^4-6*t^2+1", ctx).shift(-2) == P("t^2 - 6 + t^-2", ctx)
    # a1^2 - b0^2*p at beta=3 collapses to t^2
    a1 = P("1/2*t^2-1/2", ctx)
    b0 = P("s2", ctx)
    p = P("1/8*t^4 - 3/4*t^2 + 1/8", ctx)
    assert a1 * a1 - b0 * b0 * p == P("t^2", ctx)


def test_derivative(ctx):
    assert P("1/2*t^2-1/2", ctx).derivative() == P("t", ctx)
    assert P("t^-1", ctx).derivative() == P("-t^-2", ctx)
    a1 = P("1/2*t^2-1/2", ctx)
    assert a1.derivative().derivative() == LaurentPoly.one(ctx)


def _random_poly(rng, ctx, max_terms=5, lo=-4, hi=6):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = rng.randint(lo, hi)
        c = ctx.scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                       Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)), 0)
        terms[e] = c
    return LaurentPoly(ctx, terms)


def test_ring_axioms_and_product_rule_random(ctx):
    rng = random.Random(31415)
    for _ in range(500):
        f = _random_poly(rng, ctx)
        g = _random_poly(rng, ctx)
        h = _random_poly(rng, ctx)
        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


def test_divmod_and_exact_division(ctx):
    f = P("t^4-1", ctx)
    g = P("t^2-1", ctx)
    q, r = poly_divmod(f, g)
    assert q == P("t^2+1", ctx) and r.is_zero()
    q, r = poly_divmod(P("t^3+t+1", ctx), P("t^2+1", ctx))
    assert q == P("t", ctx) and r == P("1", ctx)
    assert exact_div(P("t^4-1", ctx), P("t^2+1", ctx)) == g
    with pytest.raises(ValueError):
        exact_div(P("t^2+1", ctx), P("t+1", ctx))
    assert divides(P("t+1", ctx), P("t^2-1", ctx))
    assert not divides(P("t+2", ctx), P("t^2-1", ctx))


def test_gcd_examples(ctx):
    assert poly_gcd(P("t^2-1", ctx), P("t-1", ctx)) == P("t-1", ctx)
    quartic = P("t^4-6*t^2+1", ctx)
    assert poly_gcd(quartic, quartic.derivative()) == LaurentPoly.one(ctx)
    f = P("3*t^3-3*t", ctx)
    assert poly_gcd(f, LaurentPoly.zero(ctx)) == P("t^3-t", ctx).shift(-1)  # monic, t-cleared
    with pytest.raises(ValueError):
        poly_gcd(LaurentPoly.zero(ctx), LaurentPoly.zero(ctx))


def test_gcd_divides_both_inputs_random(ctx):
    rng = random.Random(99)
    for _ in range(120):
        f = _random_poly(rng, ctx, max_terms=4, lo=0, hi=5)
        g = _random_poly(rng, ctx, max_terms=4, lo=0, hi=5)
        if f.is_zero() and g.is_zero():
            continue
        d = poly_gcd(f, g)
        assert divides(d, f) and divides(d, g)


def test_squarefree_decomposition(ctx):
    f = P("t^2", ctx) * P("t-1", ctx) ** 3 * P("t^2+1", ctx)
    parts = squarefree_decomposition(f)
    as_dict = {render_poly(p): m for p, m in parts}
    assert as_dict == {"t": 2, "t - 1": 3, "t^2 + 1": 1}
    rebuilt = LaurentPoly.one(ctx)
    for p, m in parts:
        rebuilt = rebuilt * p ** m
    assert rebuilt == f.monic()
    assert squarefree_decomposition(P("t^4-6*t^2+1", ctx)) == [(P("t^4-6*t^2+1", ctx), 1)]


def test_trunc_series_embedding_and_errors(ctx):
    # constant-coefficient series multiplication matches polynomial multiplication
    f = [Fraction(1), Fraction(-2), Fraction(3)]
    g = [Fraction(2), Fraction(1)]
    sf = TruncSeries(ctx, [LaurentPoly.from_scalar(ctx, c) for c in f + [0, 0]], 4)
    sg = TruncSeries(ctx, [LaurentPoly.from_scalar(ctx, c) for c in g + [0, 0, 0]], 4)
    prod = sf * sg
    pf = compose_qpoly(f, P("t", ctx))
    pg = compose_qpoly(g, P("t", ctx))
    direct = pf * pg
    for k in range(5):
        assert prod.coeffs[k] == LaurentPoly.from_scalar(ctx, direct.coeff(k).as_fraction()
                                                         if direct.coeff(k) else 0)
    with pytest.raises(ValueError):
        sf * TruncSeries.zero(ctx, 3)
    assert sf.x_times_ddx().coeffs[2] == LaurentPoly.from_scalar(ctx, 6)


def test_rational_func_reduction_and_arithmetic(ctx):
    rf = RationalFunc(P("t^2-1", ctx), P("t-1", ctx))
    assert rf.is_poly() and rf.as_poly() == P("t+1", ctx)
    rf = RationalFunc(P("t", ctx), P("2*t^2-2", ctx))
    assert rf.den == P("t^2-1", ctx)  # monic denominator
    assert rf.num == P("1/2*t", ctx)
    assert rf + rf == RationalFunc(P("t", ctx), P("t^2-1", ctx))
    assert rf * RationalFunc.from_poly(P("t^2-1", ctx)) == RationalFunc.from_poly(P("1/2*t", ctx))
    # derivative quotient rule: d/dt (t/(t^2-1)) = -(t^2+1)/(t^2-1)^2
    d = RationalFunc(P("t", ctx), P("t^2-1", ctx)).derivative()
    assert d == RationalFunc(P("-t^2-1", ctx), P("t^2-1", ctx) ** 2)
    with pytest.raises(ZeroDivisionError):
        RationalFunc(P("1", ctx), LaurentPoly.zero(ctx))


def test_algfunc_norm_form_random(ctx):
    rng = random.Random(4242)
    wsq = P("t^2", ctx) - P("1/2*t^2-1/2", ctx) ** 2
    for _ in range(60):
        q = RationalFunc.from_poly(_random_poly(rng, ctx, max_terms=3, lo=0, hi=3))
        s = RationalFunc.from_poly(_random_poly(rng, ctx, max_terms=3, lo=0, hi=3))
        e = AlgFuncElem(wsq, q, s)
        prod = e * e.conj_w()
        assert prod.s.is_zero()
        assert prod.q == q * q - s * s * wsq


def test_algfunc_derivation(ctx):
    # (dw/dt) * w equals wsq'/2
    wsq = P("t^2", ctx) - P("1/2*t^2-1/2", ctx) ** 2
    w = AlgFuncElem.w_times(wsq, P("1", ctx))
    dw = w.derivative()
    prod = dw * w
    assert prod.s.is_zero()
    assert prod.q == RationalFunc.from_poly(wsq.derivative()).__mul__(Fraction(1, 2))
    # D applied to a constant is zero
    dmul = RationalFunc(P("t^2", ctx), P("1/2*t^2+1/2", ctx))
    c = AlgFuncElem.pure(wsq, P("5", ctx))
    out = algfunc_derive(c, dmul)
    assert out.q.is_zero() and out.s.is_zero()
    # a D-image of a pure-w element squares into rational functions
    e = AlgFuncElem.w_times(wsq, RationalFunc(P("1", ctx), P("t", ctx)))
    de = algfunc_derive(e, dmul)
    sq = de * de
    assert sq.s.is_zero()


def test_render_and_parse_round_trip(ctx):
    golden = "1/2*t^4 - 2*t^2 + 1/2"
    poly = P(golden, ctx)
    assert render_poly(poly) == golden
    assert render_poly(P("s2*t^2 - s2", ctx)) == "s2*t^2 - s2"
    assert render_poly(P("(1 + s2)*t^3 + 2", ctx)) == "(1 + s2)*t^3 + 2"
    assert render_poly(LaurentPoly.zero(ctx)) == "0"
    assert render_poly(P("t^2 - 6 + t^-2", ctx)) == "t^2 - 6 + t^-2"
    rng = random.Random(5)
    for _ in range(100):
        f = _random_poly(rng, ctx)
        assert P(render_poly(f), ctx) == f


def test_parse_errors(ctx):
    for bad in ("", "t^", "1/", "(t", "t @ 2", "s3"):
        with pytest.raises(ValueError):
            parse_poly(bad, ctx)


def test_eval_scalar_and_float(ctx):
    f = P("1/2*t^4 - 2*t^2 + 1/2", ctx)
    assert f.eval_scalar(ctx.from_rational(1)) == ctx.from_rational(-1)
    assert f.eval_float(2.0) == pytest.approx(0.5 * 16 - 8 + 0.5)
    g = P("t^-2 + t", ctx)
    assert g.eval_scalar(ctx.from_rational(2)) == ctx.from_rational(Fraction(9, 4))
