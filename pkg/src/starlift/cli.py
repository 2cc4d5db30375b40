"""Command-line front door.

Each subcommand loads and validates an input algebra, runs one slice of the
pipeline, and prints a deterministic report (JSON by default) whose
top-level ``certificates`` object holds exact booleans. Exit status is 0
iff every certificate in the report is true, 1 on a failed certificate or
a structured computation error, 2 on unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from math import comb

from ._rat import QQ, rat_str
from .cohochschild import cohomology_dimension
from .core import (
    FormalSeriesTensor,
    alt_project,
    cyb,
    is_invariant,
    load_lie_algebra,
    poisson_bracket,
)
from .envelope import (
    TAG_G,
    PBWElement,
    center,
    dual_bracket,
    invariants_s_dual,
    pbw_commutator,
    pbw_product,
)
from .errors import CYBViolation, ParseError, StarliftError, TNotInvariant
from .lifts import cocycle_defect, gauge_rho, lift, pentagon_defect
from .quasitriangular import (
    alpha_matrix_rank,
    c_s_basis,
    c_s_graded_dims,
    c_s_map,
    check_inner_derivation,
    compare_images,
    mu_of_rprime,
    qt_validate,
    sts_theta,
)

DEGREE_CAP = 8


def _series_terms(f: FormalSeriesTensor) -> list:
    out = []
    for key in sorted(f.coeffs):
        out.append([[list(vec) for vec in key], rat_str(f.coeffs[key])])
    return out


def _pbw_terms(x) -> list:
    return [[list(mono), rat_str(c)] for mono, c in sorted(x.coeffs.items())]


def _form_terms(l) -> list:
    return [[list(vec), rat_str(c)] for vec, c in sorted(l.coeffs.items())]


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return rat_str(obj)


def _print_report(report: dict, output: str) -> None:
    report = _jsonable(report)
    if output == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    certs = report.get("certificates", {})
    for name in sorted(certs):
        print(f"certificate {name}: {'PASS' if certs[name] else 'FAIL'}")
    for key in sorted(report):
        if key in ("certificates",):
            continue
        val = report[key]
        if isinstance(val, (str, int, bool)) or val is None:
            print(f"{key}: {val}")
        elif isinstance(val, list) and all(isinstance(v, int) for v in val):
            print(f"{key}: {val}")


def _require_coboundary(rmat):
    if rmat is None:
        raise ParseError("input provides no r matrix")
    if rmat.kind != "antisymmetric-coboundary":
        raise StarliftError(
            "this command needs an antisymmetric coboundary r; "
            f"input is tagged {rmat.kind!r}"
        )
    return rmat


def cmd_validate(alg, rmat, args) -> dict:
    certs = {"jacobi": True}
    report = {
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "certificates": certs,
    }
    if rmat is None:
        return report
    if rmat.kind == "antisymmetric-coboundary":
        certs["antisymmetric"] = True
        Z = cyb(rmat)
        certs["z_in_wedge3"] = alt_project(Z) == Z
        certs["z_invariant"] = is_invariant(Z)
        report["z_terms"] = _series_terms(Z)
    else:
        try:
            qt = qt_validate(alg, rmat)
        except CYBViolation:
            certs["cyb_zero"] = False
            return report
        except TNotInvariant:
            certs["cyb_zero"] = True
            certs["t_invariant"] = False
            return report
        certs["cyb_zero"] = True
        certs["t_invariant"] = True
        report["nondegenerate"] = qt.nondegenerate
    return report


def cmd_lift(alg, rmat, args) -> dict:
    rmat = _require_coboundary(rmat)
    N = args.degree
    res = lift(rmat, N)
    phi, rho, Z = res["phi"], res["rho"], res["Z"]
    pent = pentagon_defect(phi)
    coc = cocycle_defect(rho, phi)
    certs = {
        "defect_zero": pent.is_zero() and coc.is_zero(),
        "invariant": is_invariant(phi),
        "cocycle": coc.is_zero(),
    }
    report = {
        "degree": N,
        "certificates": certs,
        "z_terms": _series_terms(Z),
        "alt_phi_to_z_ratio": None if Z.is_zero() else _ratio(alt_project(phi), alt_project(Z)),
    }
    if args.emit == "full":
        report["phi_terms"] = _series_terms(phi)
        report["rho_terms"] = _series_terms(rho)
    return report


def _ratio(num: FormalSeriesTensor, den: FormalSeriesTensor):
    """num = q * den for a single rational q, else None."""
    if den.is_zero():
        return None
    key, base = next(iter(sorted(den.coeffs.items())))
    q = num.coeffs.get(key, QQ(0)) / base
    return rat_str(q) if num == den.scale(q) else None


def cmd_cohomology(alg, rmat, args) -> dict:
    table = {}
    inv_table = {}
    ok = True
    top = min(args.degree, 6)
    for k in (1, 2, 3):
        for N in range(k, top + 1):
            dim = cohomology_dimension(alg, k, N)
            table[f"k{k}_N{N}"] = dim
            inv_table[f"k{k}_N{N}"] = cohomology_dimension(alg, k, N, invariant_only=True)
            expected = comb(alg.dim, k) if N == k else 0
            ok = ok and dim == expected
    return {
        "certificates": {"concentrated": ok},
        "dimensions": table,
        "invariant_dimensions": inv_table,
    }


def cmd_envelope(alg, rmat, args) -> dict:
    maxdeg = args.maxdeg
    cen = center(alg, maxdeg, TAG_G)
    inv = invariants_s_dual(alg, maxdeg)
    inv_dims = [0] * (maxdeg + 1)
    for l in inv:
        inv_dims[l.order] += 1
    report = {
        "center_dim": len(cen),
        "center_filtrations": sorted(x.filtration for x in cen),
        "invariant_dims": inv_dims,
        "certificates": {},
    }
    if rmat is not None and rmat.kind == "antisymmetric-coboundary":
        dual = dual_bracket(rmat)
        report["dual_structure_constants"] = [
            [i, j, [[k, rat_str(v)] for k, v in enumerate(dual.c[i][j]) if v]]
            for i in range(dual.dim)
            for j in range(i + 1, dual.dim)
            if any(dual.c[i][j])
        ]
        # invariants Poisson-commute in S(g*) under the dual bracket
        ok = True
        n = 2 * maxdeg
        for f, g in itertools.combinations(inv, 2):
            ff = FormalSeriesTensor.make(dual, 1, n, {(v,): c for v, c in f.coeffs.items()})
            gg = FormalSeriesTensor.make(dual, 1, n, {(v,): c for v, c in g.coeffs.items()})
            if not poisson_bracket(ff, gg).is_zero():
                ok = False
        report["certificates"]["commutative"] = ok
    return report


def _fixed_gauges(alg, N):
    """Two deterministic non-trivial gauge parameters."""
    from .cohochschild import monomials

    out = []
    for salt in (1, 2):
        items = {}
        for d in range(2, N + 1):
            for pos, vec in enumerate(monomials(alg.dim, d)):
                if (pos + salt * d) % 3 == 0:
                    items[(vec,)] = QQ(1 + (pos + salt) % 4, 1 + (pos % 2))
        out.append(FormalSeriesTensor.make(alg, 1, N, items))
    return out


def cmd_theta(alg, rmat, args) -> dict:
    from .duality import poisson_traces, theta

    rmat = _require_coboundary(rmat)
    maxdeg = args.maxdeg
    N = max(args.degree, maxdeg)
    rho = lift(rmat, N)["rho"]
    traces = poisson_traces(alg, maxdeg)
    images = [theta(f, rho) for f in traces]

    filtered = all(
        th.filtration == f.order and th.top_symbol() == f.homogeneous_part(f.order).coeffs
        for f, th in zip(traces, images)
    )
    commutative = all(
        pbw_commutator(a, b).is_zero() for a, b in itertools.combinations(images, 2)
    )
    gauge_ok = True
    for lam in _fixed_gauges(alg, N):
        rho2 = gauge_rho(lam, rho)
        if [theta(f, rho2) for f in traces] != images:
            gauge_ok = False
    report = {
        "certificates": {
            "filtered": filtered,
            "commutative": commutative,
            "gauge_independent": gauge_ok,
        },
        "trace_orders": [f.order for f in traces],
    }
    if args.emit == "full":
        report["theta_images"] = [_pbw_terms(x) for x in images]
    return report


def cmd_qt(alg, rmat, args) -> dict:
    if rmat is None:
        raise ParseError("input provides no r matrix")
    qt = qt_validate(alg, rmat)
    s = QQ(args.s)
    maxdeg = args.maxdeg
    dims = c_s_graded_dims(s, maxdeg, qt)
    basis = c_s_basis(s, maxdeg, qt)
    commutative = all(
        pbw_commutator(a, b).is_zero() for a, b in itertools.combinations(basis, 2)
    )
    closed = all(
        c_s_map(p, qt.g, s).is_zero()
        for a, b in itertools.combinations_with_replacement(basis, 2)
        for p in (pbw_product(a, b),)
        if p.filtration <= maxdeg
    )
    inner = check_inner_derivation(qt)
    certs = {
        "inner_derivation": inner["passed"],
        "commutative": commutative,
        "closed": closed,
    }
    report = {
        "s": rat_str(s),
        "certificates": certs,
        "c_s_graded_dims": list(dims),
        "nondegenerate": qt.nondegenerate,
        "mu_rprime": [rat_str(v) for v in mu_of_rprime(qt)],
        "alpha_rank": list(alpha_matrix_rank(qt, maxdeg)),
        "image_comparison": compare_images(qt, maxdeg),
    }
    if qt.nondegenerate:
        transported = []
        in_c1 = True
        for z in center(qt.g, maxdeg, TAG_G):
            if z.filtration == 0:
                continue
            y = sts_theta(z, qt)
            transported.append(_pbw_terms(y))
            if not c_s_map(y, qt.g, QQ(1)).is_zero():
                in_c1 = False
        certs["theta_in_C1"] = in_c1
        if args.emit == "full":
            report["theta_images"] = transported
    return report


COMMANDS = {
    "validate": cmd_validate,
    "lift": cmd_lift,
    "cohomology": cmd_cohomology,
    "envelope": cmd_envelope,
    "theta": cmd_theta,
    "qt": cmd_qt,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starlift",
        description="Exact lifts of coboundary Lie bialgebra structures and "
                    "their enveloping-algebra transport.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="path to a JSON algebra spec")
        p.add_argument("--degree", type=int, default=5,
                       help="series truncation degree (default 5, capped at "
                            f"{DEGREE_CAP} without --allow-large)")
        p.add_argument("--maxdeg", type=int, default=4,
                       help="filtration bound for envelope-side computations")
        p.add_argument("--s", default="1",
                       help="the scalar s of the C_s family (qt only)")
        p.add_argument("--output", choices=("json", "text"), default="json")
        p.add_argument("--emit", choices=("full", "certificates"), default="full",
                       help="include coefficient dumps or certificates only")
        p.add_argument("--allow-large", action="store_true",
                       help="permit degree beyond the default cap")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "lift" and args.degree < 3:
        print(json.dumps({"error": {"type": "BadDegree",
                                    "message": "lift needs --degree >= 3"}}))
        return 1
    if args.degree > DEGREE_CAP and not args.allow_large:
        print(json.dumps({"error": {"type": "BadDegree",
                                    "message": f"--degree > {DEGREE_CAP} needs --allow-large"}}))
        return 1
    if args.maxdeg < 0:
        print(json.dumps({"error": {"type": "BadDegree",
                                    "message": "--maxdeg must be >= 0"}}))
        return 1
    try:
        alg, rmat = load_lie_algebra(args.input)
    except ParseError as exc:
        print(json.dumps({"error": {"type": "ParseError", "message": str(exc)}}))
        return 2
    except StarliftError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1
    try:
        QQ(args.s)
    except (ValueError, ZeroDivisionError):
        print(json.dumps({"error": {"type": "ParseError",
                                    "message": f"malformed --s value {args.s!r}"}}))
        return 2
    try:
        report = COMMANDS[args.command](alg, rmat, args)
    except ParseError as exc:
        print(json.dumps({"error": {"type": "ParseError", "message": str(exc)}}))
        return 2
    except StarliftError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1
    _print_report(report, args.output)
    return 0 if all(report.get("certificates", {}).values()) else 1


if __name__ == "__main__":
    sys.exit(main())
