"""Exact Pell polynomial pair families on punctured hyperelliptic curve rings.

The package generates the sequences a_n, b_n attached to a configuration
(p, a1, b0) with u^2 = p, verifies their identity battery with exact tower
arithmetic, builds and classifies the second-order operators annihilating
them, and reproduces the orthogonality and vanishing elliptic-integral
identities of the quartic setting by numerical quadrature.
"""

from .exactnum import Rational, TowerContext, TowerScalar, parse_rational, rational_sqrt, tower_new
from .laurent import (AlgFuncElem, LaurentPoly, RationalFunc, TruncSeries, compose_qpoly,
                      divides, exact_div, parse_poly, poly_divmod, poly_gcd, render_poly,
                      squarefree_decomposition)
from .curvering import (CurveElem, PellConfig, UnitExponents, custom_config, djkm_config,
                        djkm_q, djkm_units, unit_exponent_form)
from .pellfam import (ChebFamily, PellFamily, binom_frac, chebyshev_t_coeffs,
                      chebyshev_u_coeffs, half_factorial_ratio, jacobi_coeffs,
                      rodrigues_via_algfunc)
from .ode import (OdeKind, OdeOperator, SingularReport, build_djkm, build_general,
                  build_general_b_layouts, classify_fuchsian, singular_points_numeric)
from .quad import (KernelKind, OrthoProblem, QuadResult, chebyshev_first_value,
                   chebyshev_second_value, elliptic_identity_check, expected_value,
                   integrate_gauss_chebyshev, integrate_tanh_sinh, interval_endpoints,
                   kernel_first, kernel_second, ortho_table, t_of_z)

__all__ = [
    "AlgFuncElem", "ChebFamily", "CurveElem", "KernelKind", "LaurentPoly", "OdeKind",
    "OdeOperator", "OrthoProblem", "PellConfig", "PellFamily", "QuadResult", "Rational",
    "RationalFunc", "SingularReport", "TowerContext", "TowerScalar", "TruncSeries",
    "UnitExponents", "binom_frac", "build_djkm", "build_general", "build_general_b_layouts",
    "chebyshev_first_value", "chebyshev_second_value", "chebyshev_t_coeffs",
    "chebyshev_u_coeffs", "classify_fuchsian", "compose_qpoly", "custom_config", "divides",
    "djkm_config", "djkm_q", "djkm_units", "elliptic_identity_check", "exact_div",
    "expected_value", "half_factorial_ratio", "integrate_gauss_chebyshev",
    "integrate_tanh_sinh", "interval_endpoints", "jacobi_coeffs", "kernel_first",
    "kernel_second", "ortho_table", "parse_poly", "parse_rational", "poly_divmod",
    "poly_gcd", "rational_sqrt", "render_poly", "rodrigues_via_algfunc",
    "singular_points_numeric", "squarefree_decomposition", "t_of_z", "tower_new",
    "unit_exponent_form",
]

__version__ = "0.1.0"
