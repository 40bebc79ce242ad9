import math
import random
from fractions import Fraction

import pytest

from pellpoly import (KernelKind, OrthoProblem, PellFamily, chebyshev_first_value,
                      chebyshev_second_value, djkm_config, elliptic_identity_check,
                      expected_value, integrate_gauss_chebyshev, integrate_tanh_sinh,
                      interval_endpoints, kernel_first, kernel_second, ortho_table, t_of_z)

PI = math.pi
RT2 = math.sqrt(2)


def test_interval_endpoints_reciprocal():
    rng = random.Random(17)
    for _ in range(50):
        beta = 1 + 20 * rng.random()
        lo, hi = interval_endpoints(beta)
        assert 0 < lo <= 1 <= hi
        assert lo * hi == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        interval_endpoints(1.0)


def test_t_of_z_substitution_consistency():
    rng = random.Random(23)
    for beta in (3.0, 5 / 3, 17.0):
        root = math.sqrt(2 * (beta - 1))
        lo, hi = interval_endpoints(beta)
        for _ in range(100):
            z = rng.uniform(-1, 1)
            t = t_of_z(beta, z)
            assert lo <= t <= hi
            assert (t * t - 1) / (t * root) == pytest.approx(z, abs=1e-13)
        assert t_of_z(beta, 1.0) == pytest.approx(hi, rel=1e-14)
        assert t_of_z(beta, -1.0) == pytest.approx(lo, rel=1e-12)


def test_chebyshev_recurrence_values():
    rng = random.Random(5)
    for _ in range(40):
        z = rng.uniform(-1, 1)
        theta = math.acos(z)
        for n in (0, 1, 2, 5, 9):
            assert chebyshev_first_value(n, z) == pytest.approx(math.cos(n * theta), abs=1e-12)
            if math.sin(theta) > 1e-8:
                u = math.sin((n + 1) * theta) / math.sin(theta)
                assert chebyshev_second_value(n, z) == pytest.approx(u, abs=1e-9)


def test_kernel_spot_values():
    k00 = kernel_first(3.0, 0, 0)
    assert k00(1.0) == pytest.approx(RT2, abs=1e-15)
    # a_1(1) = 0 makes the mixed first kernel vanish at t = 1
    k01 = kernel_first(3.0, 0, 1)
    assert k01(1.0) == pytest.approx(0.0, abs=1e-15)


def test_kernel_endpoint_behaviour():
    lo, hi = interval_endpoints(3.0)
    first = kernel_first(3.0, 0, 0)
    second = kernel_second(3.0, 0, 0)
    assert first(lo + 1e-13) > 1e5          # inverse-square-root blowup
    assert abs(second(hi - 1e-13)) < 1e-5   # vanishing radicand
    with pytest.raises(ValueError):
        first(lo - 0.01)
    with pytest.raises(ValueError):
        second(hi + 0.01)


def test_kernel_exact_family_path_agrees():
    fam = PellFamily(djkm_config(Fraction(3)))
    lo, hi = interval_endpoints(3.0)
    rng = random.Random(9)
    for n, m in ((0, 0), (1, 2), (3, 3)):
        ka = kernel_first(3.0, n, m, family=fam)
        kb = kernel_first(3.0, n, m)
        sa = kernel_second(3.0, n, m, family=fam)
        sb = kernel_second(3.0, n, m)
        for _ in range(20):
            t = rng.uniform(lo + 1e-3, hi - 1e-3)
            assert ka(t) == pytest.approx(kb(t), rel=1e-10, abs=1e-12)
            assert sa(t) == pytest.approx(sb(t), rel=1e-10, abs=1e-12)


def test_gauss_diagonal_values_beta_3():
    res = integrate_gauss_chebyshev(OrthoProblem(3.0, KernelKind.FIRST, 0, 0), 8)
    assert res.value == pytest.approx(PI * RT2, abs=1e-13)
    res = integrate_gauss_chebyshev(OrthoProblem(3.0, KernelKind.FIRST, 1, 1), 8)
    assert res.value == pytest.approx(PI * RT2 / 2, abs=1e-13)
    res = integrate_gauss_chebyshev(OrthoProblem(3.0, KernelKind.FIRST, 0, 1), 8)
    assert abs(res.value) < 1e-13
    res = integrate_gauss_chebyshev(OrthoProblem(3.0, KernelKind.SECOND, 2, 2), 12)
    assert res.value == pytest.approx(2 * RT2 * PI, abs=1e-12)


def test_gauss_exactness_stabilizes():
    for n, m in ((2, 2), (3, 5), (8, 8)):
        prob = OrthoProblem(3.0, KernelKind.FIRST, n, m)
        base_nodes = (n + m + 1) // 2 + 1
        v1 = integrate_gauss_chebyshev(prob, base_nodes).value
        for extra in (1, 3, 9):
            v2 = integrate_gauss_chebyshev(prob, base_nodes + extra).value
            assert abs(v1 - v2) < 1e-13


def test_tanh_sinh_values():
    res = integrate_tanh_sinh(OrthoProblem(3.0, KernelKind.SECOND, 2, 2), tol=1e-10)
    assert res.value == pytest.approx(2 * RT2 * PI, abs=1e-10)
    assert res.abs_error_estimate < 1e-10
    res = integrate_tanh_sinh(OrthoProblem(3.0, KernelKind.FIRST, 0, 0), tol=1e-10)
    assert res.value == pytest.approx(PI * RT2, abs=1e-10)
    res = integrate_tanh_sinh(OrthoProblem(3.0, KernelKind.FIRST, 8, 8), tol=1e-10)
    assert res.value == pytest.approx(PI * RT2 / 2, abs=1e-10)


def test_tanh_sinh_exact_family_route():
    fam = PellFamily(djkm_config(Fraction(3)))
    res = integrate_tanh_sinh(OrthoProblem(3.0, KernelKind.FIRST, 2, 2), tol=1e-10, family=fam)
    assert res.value == pytest.approx(PI * RT2 / 2, abs=1e-9)


@pytest.mark.parametrize("beta", [3.0, 5 / 3, 17.0])
def test_methods_agree(beta):
    for kind in (KernelKind.FIRST, KernelKind.SECOND):
        for n, m in ((0, 0), (1, 3), (4, 4), (2, 7)):
            prob = OrthoProblem(beta, kind, n, m)
            g = integrate_gauss_chebyshev(prob, max(12, n + m + 2))
            ts = integrate_tanh_sinh(prob, tol=1e-10)
            assert abs(g.value - ts.value) < 1e-9


def test_expected_values():
    assert expected_value(3.0, KernelKind.FIRST, 0, 0) == pytest.approx(PI * RT2)
    assert expected_value(3.0, KernelKind.FIRST, 4, 4) == pytest.approx(PI * RT2 / 2)
    assert expected_value(3.0, KernelKind.SECOND, 3, 3) == pytest.approx(2 * RT2 * PI)
    assert expected_value(3.0, KernelKind.FIRST, 1, 2) == 0.0
    b = 5 / 3
    assert expected_value(b, KernelKind.FIRST, 0, 0) == pytest.approx(PI * math.sqrt(2 / 3))
    assert expected_value(b, KernelKind.SECOND, 1, 1) == pytest.approx(
        PI / 2 * (8 / 3) * math.sqrt(2 / 3))


def test_elliptic_identity_check():
    for n, m in ((0, 1), (2, 3)):
        for beta in (3.0, 5 / 3):
            out = elliptic_identity_check(beta, n, m, tol=1e-10)
            assert abs(out["first"].value) < 1e-10
            assert abs(out["second"].value) < 1e-10
    with pytest.raises(ValueError):
        elliptic_identity_check(3.0, 1, 1)


def test_ortho_table():
    rows = ortho_table(3.0, 2, kind="first", method="both", tol=1e-10)
    assert len(rows) == 9
    diag = {(r["n"], r["m"]): r for r in rows}
    assert diag[(0, 0)]["expected"] == pytest.approx(PI * RT2)
    for r in rows:
        assert r["err_gauss"] < 1e-10
        assert r["err_tanh_sinh"] < 1e-10
        assert r["method_gap"] < 1e-9
    rows = ortho_table(3.0, 0, kind="second", method="gauss")
    assert len(rows) == 1 and "tanh_sinh" not in rows[0]


def test_problem_validation():
    with pytest.raises(ValueError):
        OrthoProblem(0.5, KernelKind.FIRST, 0, 0)
    with pytest.raises(ValueError):
        OrthoProblem(3.0, KernelKind.FIRST, -1, 0)
