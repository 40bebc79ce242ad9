"""Floating-point orthogonality integrals for the scaled families.

Two independent routes evaluate each integral: a Gauss-Chebyshev rule on the
substituted z-form (exact for polynomial integrands up to rounding) and a
tanh-sinh rule on the raw t-form, which handles the inverse-square-root
endpoint singularity of the first kernel directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional

from .pellfam import PellFamily


class KernelKind(Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    nodes_used: int
    method: str


def interval_endpoints(beta: float):
    """Reciprocal pair ((sqrt(beta+1) -+ sqrt(beta-1))/sqrt(2))."""
    if beta <= 1:
        raise ValueError("integrals are defined for real beta > 1")
    sp = math.sqrt(beta + 1)
    sm = math.sqrt(beta - 1)
    rt2 = math.sqrt(2)
    return (sp - sm) / rt2, (sp + sm) / rt2


class OrthoProblem:
    """One orthogonality integral: kernel kind, indices and the t-interval."""

    __slots__ = ("beta", "kind", "n", "m", "t_lo", "t_hi")

    def __init__(self, beta: float, kind: KernelKind, n: int, m: int):
        if n < 0 or m < 0:
            raise ValueError("indices must be nonnegative")
        self.beta = float(beta)
        self.kind = kind
        self.n = n
        self.m = m
        self.t_lo, self.t_hi = interval_endpoints(self.beta)


def t_of_z(beta: float, z: float) -> float:
    """Positive branch of t^2 - z*sqrt(2(beta-1))*t - 1 = 0, mapping [-1,1] onto the interval."""
    s = math.sqrt(2 * (beta - 1))
    return (z * s + math.sqrt(s * s * z * z + 4)) / 2


def chebyshev_first_value(n: int, z: float) -> float:
    """T_n(z) by the three-term recurrence."""
    if n == 0:
        return 1.0
    prev, cur = 1.0, z
    for _ in range(n - 1):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def chebyshev_second_value(n: int, z: float) -> float:
    """U_n(z) by the three-term recurrence."""
    if n == 0:
        return 1.0
    prev, cur = 1.0, 2 * z
    for _ in range(n - 1):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def _smooth_first(beta: float, n: int, m: int,
                  family: Optional[PellFamily]) -> Callable[[float], float]:
    """First kernel with the radical factor removed."""
    root = math.sqrt(2 * (beta - 1))
    if family is not None:
        an, am = family.a_poly(n), family.a_poly(m)
        return lambda t: t ** (-n - m - 1) * an.eval_float(t) * am.eval_float(t) * (t * t + 1)

    def smooth(t: float) -> float:
        z = (t * t - 1) / (t * root)
        return chebyshev_first_value(n, z) * chebyshev_first_value(m, z) * (t * t + 1) / t

    return smooth


def _smooth_second(beta: float, n: int, m: int,
                   family: Optional[PellFamily]) -> Callable[[float], float]:
    """Second kernel with the radical factor removed."""
    root = math.sqrt(2 * (beta - 1))
    b0sq = (beta + 1) / 2
    if family is not None:
        bn, bm = family.b_poly(n), family.b_poly(m)
        return lambda t: t ** (-n - m - 3) * bn.eval_float(t) * bm.eval_float(t) * (t * t + 1)

    def smooth(t: float) -> float:
        z = (t * t - 1) / (t * root)
        return (b0sq * chebyshev_second_value(n, z) * chebyshev_second_value(m, z)
                * (t * t + 1) / t ** 3)

    return smooth


def kernel_first(beta: float, n: int, m: int,
                 family: Optional[PellFamily] = None) -> Callable[[float], float]:
    """Integrand t^(-n-m-1) * a_n * a_m * (t^2+1) * sqrt((1-beta)/(t^4-2*beta*t^2+1)).

    Family values come from the Chebyshev connection by default; passing an
    exact family switches to direct polynomial evaluation (the cross-check path).
    """
    beta = float(beta)
    smooth = _smooth_first(beta, n, m, family)

    def evaluate(t: float) -> float:
        q4 = ((t * t - 2 * beta) * t * t) + 1
        rad = (1 - beta) / q4
        if rad <= 0:
            raise ValueError(f"t={t} is outside the open integration interval")
        return smooth(t) * math.sqrt(rad)

    return evaluate


def kernel_second(beta: float, n: int, m: int,
                  family: Optional[PellFamily] = None) -> Callable[[float], float]:
    """Integrand t^(-n-m-3) * b_m * b_n * (t^2+1) * sqrt((t^4-2*beta*t^2+1)/(1-beta))."""
    beta = float(beta)
    smooth = _smooth_second(beta, n, m, family)

    def evaluate(t: float) -> float:
        q4 = ((t * t - 2 * beta) * t * t) + 1
        rad = q4 / (1 - beta)
        if rad < 0:
            raise ValueError(f"t={t} is outside the closed integration interval")
        return smooth(t) * math.sqrt(rad)

    return evaluate


def _kernel_for(prob: OrthoProblem, family: Optional[PellFamily] = None):
    if prob.kind is KernelKind.FIRST:
        return kernel_first(prob.beta, prob.n, prob.m, family)
    return kernel_second(prob.beta, prob.n, prob.m, family)


def _split_kernel(prob: OrthoProblem, family: Optional[PellFamily] = None):
    """(smooth(t), radical(q4)) with the quartic value supplied by the caller,
    so endpoint-adjacent nodes can use a cancellation-free factored quartic."""
    beta = prob.beta
    if prob.kind is KernelKind.FIRST:
        smooth = _smooth_first(beta, prob.n, prob.m, family)
        return smooth, lambda q4: math.sqrt((1 - beta) / q4)
    smooth = _smooth_second(beta, prob.n, prob.m, family)
    return smooth, lambda q4: math.sqrt(q4 / (1 - beta))


def expected_value(beta: float, kind: KernelKind, n: int, m: int) -> float:
    """Closed-form value of the integral."""
    if n != m:
        return 0.0
    root = math.sqrt(beta - 1)
    if kind is KernelKind.FIRST:
        return math.pi * root if n == 0 else math.pi * root / 2
    return math.pi / 2 * (beta + 1) * root


# -- Gauss-Chebyshev on the substituted form ------------------------------------------


def _gauss_sum(prob: OrthoProblem, num_nodes: int) -> float:
    beta, n, m = prob.beta, prob.n, prob.m
    root = math.sqrt(beta - 1)
    if prob.kind is KernelKind.FIRST:
        total = 0.0
        for k in range(1, num_nodes + 1):
            z = math.cos((2 * k - 1) * math.pi / (2 * num_nodes))
            total += chebyshev_first_value(n, z) * chebyshev_first_value(m, z)
        return root * math.pi / num_nodes * total
    b0sq = (beta + 1) / 2
    total = 0.0
    for k in range(1, num_nodes + 1):
        theta = k * math.pi / (num_nodes + 1)
        z = math.cos(theta)
        w = math.pi / (num_nodes + 1) * math.sin(theta) ** 2
        total += w * chebyshev_second_value(n, z) * chebyshev_second_value(m, z)
    return 2 * b0sq * root * total


def integrate_gauss_chebyshev(prob: OrthoProblem, num_nodes: int) -> QuadResult:
    """Gaussian rule after the substitution z = a1(t)/t; exact once 2N-1 >= n+m."""
    if num_nodes < 1:
        raise ValueError("need at least one node")
    value = _gauss_sum(prob, num_nodes)
    refined = _gauss_sum(prob, num_nodes + 7)
    return QuadResult(value, abs(value - refined), 2 * num_nodes + 7, "gauss_chebyshev")


# -- tanh-sinh on the raw form ----------------------------------------------------------


_UMAX = 4.0


def integrate_tanh_sinh(prob: OrthoProblem, tol: float = 1e-10, max_level: int = 12,
                        family: Optional[PellFamily] = None) -> QuadResult:
    """Double-exponential rule on the raw t-integral with level doubling.

    Converged when successive levels differ by less than tol; an error estimate
    above tol after max_level refinements reports non-convergence without raising.
    """
    smooth, radical = _split_kernel(prob, family)
    a, b = prob.t_lo, prob.t_hi
    half = (b - a) / 2
    halfpi = math.pi / 2

    def node(u: float) -> float:
        s = math.sinh(u)
        y = halfpi * s
        # distance to the nearer endpoint, computed in a cancellation-free form;
        # x may round onto the endpoint, but the radical argument never does
        # because the quartic is evaluated through its factored endpoint form
        if y >= 0:
            d = half * 2.0 / (math.exp(2 * y) + 1)
            x = b - d
            q4 = (x - a) * (x + a) * (-d) * (x + b)
        else:
            d = half * 2.0 / (math.exp(-2 * y) + 1)
            x = a + d
            q4 = d * (x + a) * (x - b) * (x + b)
        if d <= 0.0:
            return 0.0
        w = half * halfpi * math.cosh(u) / math.cosh(y) ** 2
        if w < 1e-300:
            return 0.0
        return w * smooth(x) * radical(q4)

    h = 1.0
    total = node(0.0)
    k = 1
    nodes = 1
    while k * h <= _UMAX:
        total += node(k * h) + node(-k * h)
        nodes += 2
        k += 1
    value = total * h
    err = math.inf
    for level in range(1, max_level + 1):
        h /= 2
        extra = 0.0
        k = 1
        while k * h <= _UMAX:
            extra += node(k * h) + node(-k * h)
            nodes += 2
            k += 2
        new_value = value / 2 + extra * h
        err = abs(new_value - value)
        value = new_value
        if level >= 3 and err < tol:
            break
    return QuadResult(value, err, nodes, "tanh_sinh")


# -- identity certification and tables --------------------------------------------------


def elliptic_identity_check(beta: float, n: int, m: int,
                            tol: float = 1e-10) -> Dict[str, QuadResult]:
    """Both raw integrals for odd n+m; each magnitude below tol certifies one
    vanishing elliptic integral."""
    if (n + m) % 2 == 0:
        raise ValueError("requires n and m of opposite parity")
    out: Dict[str, QuadResult] = {}
    for kind in (KernelKind.FIRST, KernelKind.SECOND):
        prob = OrthoProblem(beta, kind, n, m)
        out[kind.value] = integrate_tanh_sinh(prob, tol=tol)
    return out


def ortho_table(beta: float, n_max: int, kind: str = "both", method: str = "both",
                tol: float = 1e-10, gauss_nodes: Optional[int] = None) -> List[dict]:
    """Gram-matrix rows for n, m <= n_max; symmetric cells are computed once."""
    kinds = {"first": [KernelKind.FIRST], "second": [KernelKind.SECOND],
             "both": [KernelKind.FIRST, KernelKind.SECOND]}[kind]
    want_gauss = method in ("gauss", "both")
    want_ts = method in ("tanhsinh", "both")
    rows: List[dict] = []
    for kk in kinds:
        cache: Dict[tuple, dict] = {}
        for n in range(n_max + 1):
            for m in range(n_max + 1):
                lo, hi = min(n, m), max(n, m)
                if (lo, hi) not in cache:
                    prob = OrthoProblem(beta, kk, lo, hi)
                    exp_val = expected_value(beta, kk, lo, hi)
                    cell: dict = {"expected": exp_val}
                    if want_gauss:
                        nn = gauss_nodes or max(12, lo + hi + 2)
                        res = integrate_gauss_chebyshev(prob, nn)
                        cell["gauss"] = res.value
                        cell["err_gauss"] = abs(res.value - exp_val)
                    if want_ts:
                        res = integrate_tanh_sinh(prob, tol=tol)
                        cell["tanh_sinh"] = res.value
                        cell["err_tanh_sinh"] = abs(res.value - exp_val)
                    if want_gauss and want_ts:
                        cell["method_gap"] = abs(cell["gauss"] - cell["tanh_sinh"])
                    cache[(lo, hi)] = cell
                row = {"kind": kk.value, "n": n, "m": m}
                row.update(cache[(lo, hi)])
                rows.append(row)
    return rows
