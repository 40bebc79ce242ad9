import math
import random
from fractions import Fraction

import pytest

from pellpoly import TowerScalar, parse_rational, rational_sqrt, tower_new


def test_parse_rational():
    assert parse_rational("3") == Fraction(3)
    assert parse_rational("5/3") == Fraction(5, 3)
    assert parse_rational("-7/2") == Fraction(-7, 2)
    with pytest.raises(ValueError):
        parse_rational("x")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_rational_sqrt():
    assert rational_sqrt(Fraction(4)) == 2
    assert rational_sqrt(Fraction(16, 9)) == Fraction(4, 3)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


def test_tower_new_collapse_detection():
    ctx = tower_new(4, 2)  # sigma1 = 2(beta-1) at beta=3 is a square
    assert ctx.collapsed1 == 2
    assert ctx.collapsed2 is None
    ctx = tower_new(1, 1)
    assert ctx.collapsed1 == 1 and ctx.collapsed2 == 1
    ctx = tower_new(3, 2)
    assert ctx.collapsed1 is None and ctx.collapsed2 is None and ctx.paired is None
    with pytest.raises(ValueError):
        tower_new(0, 2)
    with pytest.raises(ValueError):
        tower_new(2, 0)


def test_paired_collapse_when_product_is_square():
    # sigma1 = sigma2 = 4/3: neither is a square but the product 16/9 is
    ctx = tower_new(Fraction(4, 3), Fraction(4, 3))
    assert ctx.collapsed1 is None and ctx.collapsed2 is None
    assert ctx.paired == 1
    assert ctx.s2 == ctx.s1
    x = ctx.s1 - ctx.s2
    assert not x  # would be a zero divisor in the unfolded algebra
    # inversion works throughout the folded field
    y = ctx.scalar(1, 2)
    assert y * y.inv() == ctx.one


def test_scalar_mul_defining_relations():
    ctx = tower_new(2, 2)  # sigma1 = 2 irrational, sigma2 duplicates it
    assert ctx.s1 * ctx.s1 == ctx.from_rational(2)
    ctx = tower_new(3, 2)
    assert ctx.s1 * ctx.s1 == 3
    assert ctx.s2 * ctx.s2 == 2
    assert (1 + ctx.s2) * (ctx.s2 - 1) == 1  # (1+s2)(s2-1) = 2-1
    assert (1 + ctx.s2) * (1 - ctx.s2) == -1
    prod = ctx.s1 * ctx.s2
    assert prod.coords() == (0, 0, 0, 1)


def test_scalar_inv_examples():
    ctx = tower_new(3, 2)
    assert ctx.one.inv() == ctx.one
    assert ctx.s2.inv() == ctx.scalar(0, 0, Fraction(1, 2), 0)  # s2/2
    # (1+s1)(s1-1) = 2, so (1+s1)^-1 = (s1-1)/2
    assert (1 + ctx.s1).inv() == ctx.scalar(Fraction(-1, 2), Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        ctx.zero.inv()


def test_scalar_to_float():
    ctx = tower_new(3, 2)
    assert ctx.s2.to_float() == pytest.approx(1.4142135623730951, abs=0)
    assert ctx.zero.to_float() == 0.0
    val = ((1 + ctx.s1 * ctx.s2) / 3).to_float()
    assert val == pytest.approx(1.1498299142610595, abs=1e-15)
    neg = tower_new(-1, 2)
    with pytest.raises(ValueError):
        neg.s1.to_float()


def test_sqrt_scalar_lookup():
    ctx = tower_new(4, 2)
    assert ctx.sqrt_scalar(Fraction(9)) == 3
    assert ctx.sqrt_scalar(Fraction(8)) == ctx.scalar(0, 0, 2, 0)  # sqrt(8) = 2*s2
    with pytest.raises(ValueError):
        ctx.sqrt_scalar(Fraction(3))
    with pytest.raises(ValueError):
        ctx.sqrt_scalar(Fraction(-2))


def _random_scalar(rng, ctx, nonzero=False):
    while True:
        coords = [Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(4)]
        x = ctx.scalar(*coords)
        if x or not nonzero:
            return x


@pytest.mark.parametrize("sigmas", [(3, 2), (4, 2), (Fraction(4, 3), Fraction(4, 3)),
                                    (32, 9), (1, 1), (5, 7)])
def test_field_axioms_random(sigmas):
    ctx = tower_new(*sigmas)
    rng = random.Random(20240801)
    for _ in range(1000):
        x = _random_scalar(rng, ctx, nonzero=True)
        assert x * x.inv() == ctx.one
    for _ in range(300):
        x = _random_scalar(rng, ctx)
        y = _random_scalar(rng, ctx)
        z = _random_scalar(rng, ctx)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


class _Quad:
    """Reference quadratic extension a + b*sqrt(sigma), for the collapse check."""

    def __init__(self, sigma, a, b):
        self.sigma = sigma
        self.a = a
        self.b = b

    def __mul__(self, other):
        return _Quad(self.sigma, self.a * other.a + self.sigma * self.b * other.b,
                     self.a * other.b + self.b * other.a)

    def __add__(self, other):
        return _Quad(self.sigma, self.a + other.a, self.b + other.b)


def test_collapse_is_homomorphic_to_plain_quadratic_extension():
    # square first radicand: the tower must behave as Q(sqrt(sigma2))
    ctx = tower_new(Fraction(9, 4), 2)
    rng = random.Random(7)
    for _ in range(200):
        a1, b1, a2, b2 = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(4)]
        x = ctx.scalar(a1, 0, b1, 0)
        y = ctx.scalar(a2, 0, b2, 0)
        rx = _Quad(Fraction(2), a1, b1)
        ry = _Quad(Fraction(2), a2, b2)
        prod = x * y
        rprod = rx * ry
        assert prod.coords() == (rprod.a, 0, rprod.b, 0)
        tot = x + y
        rtot = rx + ry
        assert tot.coords() == (rtot.a, 0, rtot.b, 0)


def test_outputs_are_normalized_fractions():
    ctx = tower_new(3, 2)
    rng = random.Random(11)
    for _ in range(100):
        x = _random_scalar(rng, ctx, nonzero=True)
        y = _random_scalar(rng, ctx, nonzero=True)
        for coord in (x * y).coords() + (x / y).coords():
            assert coord.denominator >= 1
            assert math.gcd(coord.numerator, coord.denominator) == 1


def test_context_mismatch_raises():
    a = tower_new(3, 2).one
    b = tower_new(5, 2).one
    with pytest.raises(ValueError):
        a * b


def test_pow_and_div():
    ctx = tower_new(3, 2)
    x = ctx.scalar(1, 1, 0, 0)
    assert x ** 4 == x * x * x * x
    assert x ** -2 == (x * x).inv()
    assert (x / x) == ctx.one
    assert 1 / x == x.inv()


def test_str_rendering():
    ctx = tower_new(3, 2)
    assert str(ctx.zero) == "0"
    assert str(ctx.scalar(Fraction(1, 2))) == "1/2"
    assert str(ctx.scalar(0, -1)) == "-s1"
    assert str(ctx.scalar(1, 0, Fraction(3, 2))) == "1 + 3/2*s2"
