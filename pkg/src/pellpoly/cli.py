"""Command-line interface: family generation, the exact verification battery,
operator reports, unit relations, and quadrature tables."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .curvering import PellConfig, custom_config, djkm_config, djkm_units, unit_exponent_form
from .exactnum import parse_rational, tower_new
from .laurent import parse_poly, render_poly
from .ode import OdeKind, build_djkm, build_general, classify_fuchsian, singular_points_numeric
from .pellfam import PellFamily
from .quad import elliptic_identity_check, ortho_table


class UsageError(Exception):
    pass


# -- configuration plumbing ---------------------------------------------------------


def _add_config_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--beta", help="rational parameter of the quartic setting, e.g. 3 or 5/3")
    sub.add_argument("--p", help="custom p(t) in canonical polynomial text")
    sub.add_argument("--a1", help="custom a1(t)")
    sub.add_argument("--b0", help="custom b0(t)")
    sub.add_argument("--sigma1", default="1", help="radicand of s1 for custom coefficients")
    sub.add_argument("--sigma2", default="1", help="radicand of s2 for custom coefficients")


def _resolve_config(args) -> PellConfig:
    custom = [args.p, args.a1, args.b0]
    if args.beta is not None:
        if any(x is not None for x in custom):
            raise UsageError("give either --beta or the custom --p/--a1/--b0 triple")
        beta = parse_rational(args.beta)
        if beta in (1, -1):
            raise UsageError("beta must differ from 1 and -1")
        return djkm_config(beta)
    if all(x is not None for x in custom):
        ctx = tower_new(parse_rational(args.sigma1), parse_rational(args.sigma2))
        return custom_config(parse_poly(args.p, ctx), parse_poly(args.a1, ctx),
                             parse_poly(args.b0, ctx))
    raise UsageError("a configuration is required: --beta or all of --p/--a1/--b0")


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


# -- gen --------------------------------------------------------------------------------


def cmd_gen(args) -> int:
    config = _resolve_config(args)
    fam = PellFamily(config).extend(args.n)
    rows = [{"n": k, "a_n": render_poly(fam.a_poly(k)), "b_n": render_poly(fam.b_poly(k))}
            for k in range(args.n + 1)]
    _emit_json(rows)
    return 0


# -- verify -----------------------------------------------------------------------------


def _battery(config: PellConfig, nmax: int) -> List[dict]:
    fam = PellFamily(config)
    results: List[dict] = []

    def record(name: str, outcome, detail: str = "") -> None:
        results.append({"check": name, "status": outcome, "detail": detail})

    def run(name: str, fn, detail: str = "") -> None:
        record(name, "ok" if fn() else "FAIL", detail)

    def skip(name: str, reason: str) -> None:
        record(name, "skipped", reason)

    rng = range(1, nmax + 1)
    run("pell-identity", lambda: all(fam.verify_pell(n) for n in rng), f"n <= {nmax}")
    run("closed-forms", lambda: all(fam.verify_closed_forms(n) for n in range(nmax + 1)),
        f"n <= {nmax}")
    run("power-oracle", lambda: all(fam.power_oracle(n) is not None for n in range(nmax + 1)),
        f"n <= {nmax}")
    run("turan-difference", lambda: all(fam.verify_turan(n) for n in rng), f"n <= {nmax}")
    run("product-linearization",
        lambda: all(fam.verify_products(m, n) for m in range(nmax + 1) for n in range(m + 1)),
        f"m, n <= {nmax}")
    run("summation-formulas", lambda: all(fam.verify_summations(n) for n in rng), f"n <= {nmax}")
    run("growth-formula", lambda: all(fam.verify_growth(n) for n in range(nmax // 2 + 1)),
        f"n <= {nmax // 2}")
    order = max(4, min(nmax + 2, 16))
    run("generating-functions", lambda: fam.verify_generating_functions(order)["all_ok"],
        f"order {order}")

    if config.r is None:
        reason = "norm is not t^(2r)"
        for name in ("chebyshev-connection", "jacobi-connection", "determinant-formula",
                     "rodrigues-formula", "ode-first-kind", "ode-second-kind",
                     "fuchsian-first-kind", "fuchsian-second-kind"):
            skip(name, reason)
    else:
        run("chebyshev-connection",
            lambda: all(fam.verify_chebyshev_connection(n) for n in range(nmax + 1)),
            f"n <= {nmax}")
        run("jacobi-connection",
            lambda: all(fam.verify_jacobi_connection(n) for n in range(nmax + 1)),
            f"n <= {nmax}")
        run("determinant-formula", lambda: all(fam.verify_determinant(n) for n in rng),
            f"n <= {nmax}")
        b0_constant = config.b0.degree() == 0 and config.b0.valuation() == 0
        if b0_constant:
            run("rodrigues-formula", lambda: all(fam.verify_rodrigues(n) for n in rng),
                f"n <= {nmax}")
        else:
            skip("rodrigues-formula", "b0 is not constant")
        run("ode-first-kind",
            lambda: all(build_general(config, n, OdeKind.GENERAL_A).annihilates(fam.a_poly(n))
                        for n in range(nmax + 1)), f"n <= {nmax}")
        if b0_constant:
            run("ode-second-kind",
                lambda: all(build_general(config, n, OdeKind.GENERAL_B).annihilates(fam.b_poly(n))
                            for n in range(nmax + 1)), f"n <= {nmax}")
            if config.is_djkm:
                run("fuchsian-second-kind",
                    lambda: classify_fuchsian(build_general(config, 3, OdeKind.GENERAL_B)).fuchsian,
                    "quartic case")
            else:
                skip("fuchsian-second-kind", "not asserted outside the quartic case")
        else:
            skip("ode-second-kind", "b0 is not constant")
            skip("fuchsian-second-kind", "b0 is not constant")
        if config.is_djkm:
            run("fuchsian-first-kind",
                lambda: classify_fuchsian(build_djkm(config.beta, 3, OdeKind.DJKM_A,
                                                     config)).fuchsian, "quartic case")
        else:
            skip("fuchsian-first-kind", "not asserted outside the quartic case")

    if config.is_djkm:
        run("quartic-ode-first-kind",
            lambda: all(build_djkm(config.beta, n, OdeKind.DJKM_A, config)
                        .annihilates(fam.a_poly(n)) for n in range(nmax + 1)), f"n <= {nmax}")
        run("quartic-ode-second-kind",
            lambda: all(build_djkm(config.beta, n, OdeKind.DJKM_B, config)
                        .annihilates(fam.b_poly(n)) for n in range(nmax + 1)), f"n <= {nmax}")
        run("endpoint-values", lambda: all(fam.verify_endpoints(n) for n in range(nmax + 1)),
            f"n <= {nmax}")
        run("unit-relations", lambda: _unit_relations(config)["all_ok"], "")
    else:
        for name in ("quartic-ode-first-kind", "quartic-ode-second-kind",
                     "endpoint-values", "unit-relations"):
            skip(name, "requires the quartic configuration")
    return results


def cmd_verify(args) -> int:
    config = _resolve_config(args)
    results = _battery(config, args.n)
    failed = [r for r in results if r["status"] == "FAIL"]
    if args.format == "json":
        _emit_json({"config": config.to_dict(), "checks": results,
                    "passed": not failed})
    else:
        for r in results:
            status = {"ok": "ok  ", "FAIL": "FAIL", "skipped": "skip"}[r["status"]]
            detail = f" ({r['detail']})" if r["detail"] else ""
            print(f"{status} {r['check']}{detail}")
        print(f"{'all checks passed' if not failed else f'{len(failed)} check(s) failed'}")
    return 1 if failed else 0


# -- units ------------------------------------------------------------------------------


def _unit_relations(config: PellConfig) -> dict:
    lam0, lam1, lam2, lam3 = djkm_units(config)
    ctx = config.tower
    from .laurent import LaurentPoly
    one = LaurentPoly.one(ctx)
    t2 = LaurentPoly.t(ctx, 2)
    t2_elem = lam0.__class__(t2, LaurentPoly.zero(ctx), config)
    rel = {
        "norm(unit0) = 1": lam0.norm() == one,
        "norm(unit1) = t^2": lam1.norm() == t2,
        "norm(unit2) = t^2": lam2.norm() == t2,
        "unit1*unit2 = t^2*unit0": lam1 * lam2 == t2_elem * lam0,
        "unit1*conj(unit2) = conj(unit3)": lam1 * lam2.conj() == lam3.conj(),
    }
    rel["all_ok"] = all(rel.values())
    return rel


def cmd_units(args) -> int:
    config = _resolve_config(args)
    if not config.is_djkm:
        raise UsageError("units report requires --beta")
    rel = _unit_relations(config)
    lam0, lam1, lam2, lam3 = djkm_units(config)
    decomposition = unit_exponent_form(lam1 * lam2)
    out = {
        "relations": {k: v for k, v in rel.items() if k != "all_ok"},
        "norms": {"unit0": render_poly(lam0.norm()), "unit1": render_poly(lam1.norm()),
                  "unit2": render_poly(lam2.norm()), "unit3": render_poly(lam3.norm())},
        "exponent_form_of_unit1*unit2": None if decomposition is None else {
            "scalar": str(decomposition.scalar), "t_exp": decomposition.t_exp,
            "e1": decomposition.e1, "e2": decomposition.e2},
        "all_ok": rel["all_ok"],
    }
    _emit_json(out)
    return 0 if rel["all_ok"] else 1


# -- ode --------------------------------------------------------------------------------


def cmd_ode(args) -> int:
    config = _resolve_config(args)
    if not config.is_djkm:
        raise UsageError("the ode report requires --beta")
    fam = PellFamily(config)
    kinds = {"first": [OdeKind.DJKM_A], "second": [OdeKind.DJKM_B],
             "both": [OdeKind.DJKM_A, OdeKind.DJKM_B]}[args.kind]
    reports = []
    all_ok = True
    for kind in kinds:
        op = build_djkm(config.beta, args.n, kind, config)
        target = fam.a_poly(args.n) if kind is OdeKind.DJKM_A else fam.b_poly(args.n)
        ann = op.annihilates(target)
        rep = classify_fuchsian(op)
        pts = singular_points_numeric(op)
        all_ok = all_ok and ann and rep.fuchsian
        reports.append({
            "kind": kind.value, "n": args.n, "beta": str(config.beta),
            "annihilates": ann, "fuchsian": rep.fuchsian,
            "infinity_regular": rep.infinity_regular,
            "coefficient_degrees": list(rep.degrees),
            "singular_points": [[z.real, z.imag] for z in pts],
        })
    _emit_json(reports)
    return 0 if all_ok else 1


# -- ortho and elliptic -------------------------------------------------------------------


def _float_beta(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"not a number: {text!r}")


def cmd_ortho(args) -> int:
    beta = _float_beta(args.beta)
    if beta <= 1:
        raise UsageError("orthogonality integrals need beta > 1")
    rows = ortho_table(beta, args.nmax, kind=args.kind, method=args.method, tol=args.tol)
    if args.format == "json":
        _emit_json(rows)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["kind", "n", "m", "value_gauss", "value_tanhsinh", "expected",
                         "abs_err_gauss", "abs_err_tanhsinh"])
        for row in rows:
            writer.writerow([
                row["kind"], row["n"], row["m"],
                row.get("gauss", ""), row.get("tanh_sinh", ""), row["expected"],
                row.get("err_gauss", ""), row.get("err_tanh_sinh", ""),
            ])
    worst = max((row.get("err_gauss", 0.0) + row.get("err_tanh_sinh", 0.0) for row in rows),
                default=0.0)
    return 0 if worst < max(args.tol * 100, 1e-8) else 1


def cmd_elliptic(args) -> int:
    beta = _float_beta(args.beta)
    if beta <= 1:
        raise UsageError("elliptic identities need beta > 1")
    if (args.n + args.m) % 2 == 0:
        raise UsageError("n and m must have opposite parity")
    results = elliptic_identity_check(beta, args.n, args.m, tol=args.tol)
    vanished = all(abs(r.value) < args.tol for r in results.values())
    _emit_json({
        "beta": args.beta, "n": args.n, "m": args.m, "tol": args.tol,
        "first": {"value": results["first"].value,
                  "abs_error_estimate": results["first"].abs_error_estimate,
                  "nodes": results["first"].nodes_used},
        "second": {"value": results["second"].value,
                   "abs_error_estimate": results["second"].abs_error_estimate,
                   "nodes": results["second"].nodes_used},
        "vanished": vanished,
    })
    return 0 if vanished else 1


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pellpoly",
        description="Pell polynomial pair families on punctured hyperelliptic curve rings: "
                    "exact identity verification and orthogonality quadrature.")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="emit the family members as canonical text")
    _add_config_options(gen)
    gen.add_argument("--n", type=int, required=True, help="largest index to emit")
    gen.set_defaults(func=cmd_gen)

    verify = subs.add_parser("verify", help="run the exact identity battery")
    _add_config_options(verify)
    verify.add_argument("--n", type=int, default=12, help="largest index to check")
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.set_defaults(func=cmd_verify)

    units = subs.add_parser("units", help="check the canonical unit relations")
    _add_config_options(units)
    units.set_defaults(func=cmd_units)

    ode = subs.add_parser("ode", help="operator annihilation and singular point report")
    _add_config_options(ode)
    ode.add_argument("--n", type=int, required=True, help="family index")
    ode.add_argument("--kind", choices=["first", "second", "both"], default="both")
    ode.set_defaults(func=cmd_ode)

    ortho = subs.add_parser("ortho", help="orthogonality table by quadrature")
    ortho.add_argument("--beta", required=True, help="real parameter > 1")
    ortho.add_argument("--nmax", type=int, required=True)
    ortho.add_argument("--kind", choices=["first", "second", "both"], default="both")
    ortho.add_argument("--method", choices=["gauss", "tanhsinh", "both"], default="both")
    ortho.add_argument("--tol", type=float, default=1e-10)
    ortho.add_argument("--format", choices=["csv", "json"], default="csv")
    ortho.set_defaults(func=cmd_ortho)

    ell = subs.add_parser("elliptic", help="certify one pair of vanishing elliptic integrals")
    ell.add_argument("--beta", required=True, help="real parameter > 1")
    ell.add_argument("--n", type=int, required=True)
    ell.add_argument("--m", type=int, required=True)
    ell.add_argument("--tol", type=float, default=1e-10)
    ell.set_defaults(func=cmd_elliptic)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
