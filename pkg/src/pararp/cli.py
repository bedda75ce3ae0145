"""Batch front-end: run named verification suites and emit JSON reports.

Exit codes: 0 all checks passed, 2 the suite ran and found mathematical
violations (the report is still written), 1 usage / IO / parse errors.
Reports are deterministic: sorted keys, shortest round-trip floats, so the
same configuration and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import Polynomial, reflect
from .hamiltonian import (
    CouplingRule,
    HamiltonianSpec,
    SpecError,
    check_symmetries,
    load_spec,
)
from . import rp
from .representation import (
    DimensionCapError,
    build_generators,
    decompose,
    to_matrix,
    verify_yamazaki,
)

PASS, VIOLATIONS, ERROR = 0, 2, 1


def emit_report(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, sort_keys=True) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolve_spec(args) -> HamiltonianSpec:
    """Spec file if given, else the two-site crossing-only Hamiltonian."""
    if args.spec is not None:
        return load_spec(args.spec)
    if args.n is not None:
        return rp.crossing_only_spec(args.n)
    raise SpecError("either --spec or --n is required")


def _rep_for(spec: HamiltonianSpec):
    return build_generators(spec.order, spec.sites)


def cmd_verify_relations(args):
    rep = build_generators(args.n, args.L)
    residuals = verify_yamazaki(rep)
    tol = args.tol if args.tol is not None else 1e-11
    ok = max(residuals.values()) <= tol
    report = {
        "command": "verify-relations",
        "n": args.n,
        "L": args.L,
        "tolerance": tol,
        "residuals": residuals,
        "passed": ok,
    }
    return (PASS if ok else VIOLATIONS), report


def cmd_rp_check(args):
    spec = _resolve_spec(args)
    rep = _rep_for(spec)
    tol = args.tol if args.tol is not None else rp.DEFAULT_TOL
    result = rp.check_rp(
        spec, rep, samples=args.samples, seed=args.seed, tol=tol
    )
    report = {
        "command": "rp-check",
        "n": spec.order,
        "L": spec.sites,
        "validated_rule": spec.validated_rule.value,
    }
    report.update(result.to_dict())
    return (PASS if result.passed() else VIOLATIONS), report


def cmd_gram(args):
    spec = _resolve_spec(args)
    rep = _rep_for(spec)
    tol = args.tol if args.tol is not None else rp.DEFAULT_TOL
    basis = [
        Polynomial.monomial(1.0, vec)
        for d in range(0, rep.sites // 2 * (spec.order - 1) + 1, spec.order)
        for vec in rp.minus_monomials_of_degree(spec.order, spec.sites, d)
    ]
    gram, min_eig = rp.gram_psd(spec, rep, basis)
    schwarz_ok = True
    for i in range(len(basis)):
        for j in range(len(basis)):
            lhs = abs(gram[i, j]) ** 2
            rhs = gram[i, i].real * gram[j, j].real
            if lhs > rhs + tol * (1 + lhs):
                schwarz_ok = False
    ok = min_eig >= -tol and schwarz_ok
    report = {
        "command": "gram",
        "n": spec.order,
        "L": spec.sites,
        "basis_size": len(basis),
        "gram_min_eigenvalue": min_eig,
        "schwarz_ok": schwarz_ok,
        "tolerance": tol,
        "passed": ok,
    }
    return (PASS if ok else VIOLATIONS), report


def cmd_trotter(args):
    spec = _resolve_spec(args)
    rep = _rep_for(spec)
    conv = rp.trotter_convergence(spec, rep, [args.k, 2 * args.k])
    ratio = conv["ratios"].get(args.k)
    ok = ratio is not None and 1.6 <= ratio <= 2.4
    report = {
        "command": "trotter",
        "n": spec.order,
        "L": spec.sites,
        "k": args.k,
        "errors": {str(k): v for k, v in conv["errors"].items()},
        "ratio": ratio,
        "passed": ok,
    }
    return (PASS if ok else VIOLATIONS), report


def cmd_bounds(args):
    spec = _resolve_spec(args)
    rep = _rep_for(spec)
    tol = args.tol if args.tol is not None else rp.DEFAULT_TOL
    rng = np.random.default_rng(args.seed)
    pairs = [(Polynomial.identity(spec.order, spec.sites),) * 2]
    for _ in range(args.samples):
        a = reflect(rp.random_minus_observable(spec.order, spec.sites, rng))
        b = reflect(rp.random_minus_observable(spec.order, spec.sites, rng))
        pairs.append((a, b))
    worst = None
    all_ok = True
    for a, b in pairs:
        res = rp.rp_bounds_check(a, b, spec, rep, tol=tol)
        all_ok = all_ok and res["ok"]
        margin = min(res["margin1"], res["margin2"], res["partition_margin"])
        if worst is None or margin < worst["min_margin"]:
            worst = {"min_margin": margin, **res}
    report = {
        "command": "bounds",
        "n": spec.order,
        "L": spec.sites,
        "pairs": len(pairs),
        "seed": args.seed,
        "tolerance": tol,
        "worst": worst,
        "passed": all_ok,
    }
    return (PASS if all_ok else VIOLATIONS), report


def cmd_counterexample(args):
    if args.n is None:
        raise SpecError("--n is required")
    j = args.j if args.j is not None else 1
    tol = args.tol if args.tol is not None else rp.DEFAULT_TOL
    val = rp.counterexample_f(args.n, j)
    scale = 1.0 + abs(val)
    positive = val.real >= -tol * scale and abs(val.imag) <= tol * scale
    report = {
        "command": "counterexample",
        "n": args.n,
        "j": j,
        "value": [val.real, val.imag],
        "positive": positive,
    }
    if j == 1:
        ref = rp.counterexample_reference(args.n)
        report["series_reference"] = [ref.real, ref.imag]
        report["series_gap"] = abs(val - ref)
    return (PASS if positive else VIOLATIONS), report


def cmd_families(args):
    if args.family is None or args.kparam is None:
        raise SpecError("--family and --kparam are required")
    tol = args.tol if args.tol is not None else rp.DEFAULT_TOL
    n, j = rp.family_pair(args.family, args.kparam, args.jprime)
    ok, val = rp.family_check(args.family, args.kparam, args.jprime, tol=tol)
    report = {
        "command": "families",
        "family": args.family,
        "description": rp.FAMILY_DESCRIPTIONS[args.family],
        "n": n,
        "j": j,
        "value": [val.real, val.imag],
        "positive_real": ok,
    }
    return (PASS if ok else VIOLATIONS), report


def cmd_baxter(args):
    if args.spec is None:
        raise SpecError("--spec with a baxter shortcut is required")
    spec = load_spec(args.spec)
    rep = _rep_for(spec)
    sym = check_symmetries(spec, rep)
    ok = sym["reflection_symbolic"] and sym["gauge_symbolic"] and sym["matrix_ok"]
    report = {
        "command": "baxter",
        "n": spec.order,
        "L": spec.sites,
        "validated_rule": spec.validated_rule.value,
        "rp_hypotheses_met": spec.validated_rule is not CouplingRule.NONE,
        "symmetries": sym,
        "passed": ok,
    }
    return (PASS if ok else VIOLATIONS), report


def cmd_decompose(args):
    spec = _resolve_spec(args)
    rep = _rep_for(spec)
    boltzmann = rp.matrix_exp(-to_matrix(spec.total(), rep))
    poly = decompose(boltzmann, rep)
    gap = float(np.linalg.norm(to_matrix(poly, rep) - boltzmann))
    ok = gap <= 1e-10 * (1 + float(np.linalg.norm(boltzmann)))
    report = {
        "command": "decompose",
        "n": spec.order,
        "L": spec.sites,
        "terms": [
            {"exponents": list(v.entries), "coefficient": [c.real, c.imag]}
            for v, c in sorted(poly.terms.items(), key=lambda kv: kv[0].entries)
        ],
        "roundtrip_gap": gap,
        "passed": ok,
    }
    return (PASS if ok else VIOLATIONS), report


COMMANDS = {
    "verify-relations": cmd_verify_relations,
    "rp-check": cmd_rp_check,
    "gram": cmd_gram,
    "trotter": cmd_trotter,
    "bounds": cmd_bounds,
    "counterexample": cmd_counterexample,
    "families": cmd_families,
    "baxter": cmd_baxter,
    "decompose": cmd_decompose,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pararp",
        description="Parafermion algebra and reflection-positivity checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--L", type=int, default=None)
        p.add_argument("--j", type=int, default=None)
        p.add_argument("--k", type=int, default=64)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--spec", type=str, default=None)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--family", type=int, choices=(1, 2, 3), default=None)
        p.add_argument("--kparam", type=int, default=None)
        p.add_argument("--jprime", type=int, default=None)
    return parser


def _validate(args) -> None:
    if args.n is not None and args.n < 2:
        raise SpecError("--n must be >= 2")
    if args.L is not None and (args.L < 2 or args.L % 2):
        raise SpecError("--L must be even and >= 2")
    if args.samples < 1:
        raise SpecError("--samples must be >= 1")
    if args.k < 1:
        raise SpecError("--k must be >= 1")
    if args.tol is not None and args.tol <= 0:
        raise SpecError("--tol must be > 0")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify-relations" and (args.n is None or args.L is None):
        print("verify-relations requires --n and --L", file=sys.stderr)
        return ERROR
    try:
        _validate(args)
        code, report = COMMANDS[args.command](args)
        emit_report(report, args.out)
        return code
    except (SpecError, DimensionCapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
