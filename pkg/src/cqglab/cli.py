"""Command-line frontend: run verification pipelines and emit JSON reports.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 on usage or file errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io as cio
from .algebra import verify_hopf_axioms, verify_star_axioms
from .cg import character, character_orthogonality, solve_cg, verify_triple_haar
from .corep import check_unitary, irrep_table, verify_corep, verify_orthogonality
from .errors import CqglabError
from .groups import build_function_algebra, build_group_algebra, builtin_algebras
from .haar import certify_haar, gram_matrices, solve_haar, verify_haar_lemmas
from .homspace import (build_coset_subalgebra, restricted_coaction_report,
                       restricted_coaction_tensor, restricted_multiplication_family,
                       restricted_wigner_eckart, solve_restricted_basis_functions,
                       verify_coideal)
from .regular import (canonical_basis_functions, product_coaction_check,
                      dual_action_crosscheck, verify_projection_identities)
from .report import Report
from .tensor_ops import (VARIANTS, TensorOperatorFamily, check_family,
                         multiplication_family)
from .wigner_eckart import verify_wigner_eckart


def _load_spec(args) -> "HopfAlgebraSpec":
    if args.algebra:
        return cio.load_algebra(args.algebra)
    if args.group:
        group = cio.load_group(args.group)
        builder = (build_function_algebra if args.construction == "function"
                   else build_group_algebra)
        return builder(group)
    if args.builtin:
        table = builtin_algebras()
        if args.builtin not in table:
            raise CqglabError(f"unknown builtin {args.builtin!r}; have {sorted(table)}")
        return table[args.builtin]
    raise CqglabError("one of --algebra, --group, --builtin is required")


def _context(spec, tol, seed):
    h = solve_haar(spec, tol)
    grams = gram_matrices(spec, h, tol)
    table = irrep_table(spec, h, grams.gram_right, seed=seed, tol=max(tol, 1e-9))
    return h, grams, table


def _cmd_validate(args) -> list[Report]:
    spec = _load_spec(args)
    return [verify_hopf_axioms(spec, args.tolerance),
            verify_star_axioms(spec, args.tolerance)]


def _cmd_haar(args) -> list[Report]:
    spec = _load_spec(args)
    h = solve_haar(spec, args.tolerance)
    reports = [certify_haar(h, args.tolerance),
               verify_haar_lemmas(spec, h, args.tolerance)]
    gram_matrices(spec, h, args.tolerance)  # raises on positivity failure
    return reports


def _cmd_irreps(args) -> list[Report]:
    spec = _load_spec(args)
    h, grams, table = _context(spec, args.tolerance, args.seed)
    summary = Report(f"irreducibles [{spec.label}]",
                     meta={"dims": table.dims(), "multiplicities": table.multiplicities})
    total = sum(d * m for d, m in zip(table.dims(), table.multiplicities))
    summary.add("blocks fill the regular comodule", float(abs(total - spec.dim)), 0.5)
    reports = [summary]
    for pi in table:
        reports.append(verify_corep(pi, args.tolerance))
        reports.append(check_unitary(pi, args.tolerance))
    for i, p in enumerate(table):
        for q in table.irreps[i:]:
            reports.append(verify_orthogonality(p, q, h, args.tolerance))
            reports.append(character_orthogonality(character(p), character(q), h,
                                                   args.tolerance))
    for side in ("R", "L"):
        reports.append(verify_projection_identities(table, side, h, args.tolerance))
        reports.append(product_coaction_check(spec, side, args.tolerance))
    reports.append(dual_action_crosscheck(spec))
    return reports


def _cmd_cg(args) -> list[Report]:
    spec = _load_spec(args)
    h, grams, table = _context(spec, args.tolerance, args.seed)
    labels = _pick_labels(table, [args.p, args.q]) or list(table.labels)
    reports = []
    for pl in labels:
        for ql in labels:
            sys_pq = solve_cg(table[pl], table[ql], table, h)
            sys_qp = solve_cg(table[ql], table[pl], table, h)
            rep = Report(f"cg [{pl} x {ql}]", meta={"multiplicities": sys_pq.multiplicities})
            rep.add("block diagonalization", 0.0, 1.0)  # solve_cg certifies internally
            reports.append(rep)
            for rl in table.labels:
                reports.append(verify_triple_haar(table[pl], table[ql], table[rl],
                                                  sys_pq, sys_qp, h, args.tolerance))
    return reports


def _pick_labels(table, requested) -> list[str] | None:
    chosen = [r for r in requested if r]
    if not chosen:
        return None
    return [table.labels[table.index_of(r)] for r in chosen]


def _cmd_tensor_ops(args) -> list[Report]:
    spec = _load_spec(args)
    h, grams, table = _context(spec, args.tolerance, args.seed)
    reports = []
    from .corep import identity_corep
    ident = identity_corep(spec)
    rep = Report(f"identity operator [{spec.label}]")
    for kind, side in VARIANTS:
        fam = TensorOperatorFamily(ident, kind, side, np.eye(spec.dim)[None, :, :])
        rep.add(f"identity {kind}-{side}", check_family(fam),
                args.tolerance * spec.magnitude ** 2)
    reports.append(rep)
    labels = _pick_labels(table, [args.q]) or list(table.labels)
    for ql in labels:
        pi = table[ql]
        famrep = Report(f"multiplication families [{ql}]")
        for kind, side in VARIANTS:
            bset = canonical_basis_functions(pi, side, 0)
            fam = multiplication_family(bset, kind)
            famrep.add(f"{kind}-{side}", check_family(fam),
                       args.tolerance * spec.magnitude ** 2)
        reports.append(famrep)
    return reports


def _cmd_wigner_eckart(args) -> list[Report]:
    spec = _load_spec(args)
    h, grams, table = _context(spec, args.tolerance, args.seed)
    p_labels = _pick_labels(table, [args.p]) or list(table.labels)
    q_labels = _pick_labels(table, [args.q]) or list(table.labels)
    r_labels = _pick_labels(table, [args.r]) or list(table.labels)
    sides = [args.side] if args.side else ["R", "L"]
    kinds = [args.kind] if args.kind else ["ordinary", "twisted"]
    systems: dict[tuple[str, str], object] = {}

    def system_for(a: str, b: str):
        if (a, b) not in systems:
            systems[a, b] = solve_cg(table[a], table[b], table, h)
        return systems[a, b]

    reports = []
    for pl in p_labels:
        for ql in q_labels:
            for rl in r_labels:
                for side in sides:
                    for kind in kinds:
                        phis = canonical_basis_functions(table[pl], side, 0)
                        psis = canonical_basis_functions(table[rl], side, 0)
                        qset = canonical_basis_functions(table[ql], side, 0)
                        fam = multiplication_family(qset, kind)
                        system = (system_for(ql, pl) if kind == "ordinary"
                                  else system_for(pl, ql))
                        we = verify_wigner_eckart(psis, fam, phis, system,
                                                  table[rl].F, grams.gram(side),
                                                  args.tolerance)
                        rep = Report(f"wigner-eckart [{pl},{ql},{rl},{side},{kind}]",
                                     meta=we.to_dict())
                        rep.add("factorization", we.residual, we.tol)
                        reports.append(rep)
    return reports


def _cmd_homspace(args) -> list[Report]:
    spec = _load_spec(args)
    if not args.group and not args.builtin:
        raise CqglabError("homspace needs --group (or --builtin) with --subgroup")
    if args.group:
        group = cio.load_group(args.group)
    else:
        from .groups import cyclic_group, symmetric_group_3
        group = symmetric_group_3() if spec.dim == 6 else cyclic_group(spec.dim)
    subgroup = [int(x) for x in args.subgroup.split(",")] if args.subgroup else [0]
    side = args.side or "L"
    h, grams, table = _context(spec, args.tolerance, args.seed)
    coideal = build_coset_subalgebra(group, spec, subgroup, side)
    reports = [verify_coideal(coideal, args.tolerance)]
    coideal.orthonormalize(grams)
    reports.append(restricted_coaction_report(coideal, grams, h, args.tolerance))
    coact = restricted_coaction_tensor(coideal, grams)
    dims = Report(f"restricted basis functions [{coideal.label}]")
    solutions = {}
    for pi in table:
        sols = solve_restricted_basis_functions(pi, coideal, grams)
        solutions[pi.label] = sols
        dims.add(f"solution dim {pi.label}", 0.0, 1.0, dim=len(sols))
    reports.append(dims)
    we_rep = Report(f"restricted wigner-eckart [{coideal.label}]")
    for rl, psis_list in solutions.items():
        for pl, phis_list in solutions.items():
            for ql, qs_list in solutions.items():
                for psis in psis_list:
                    for phis in phis_list:
                        for qs in qs_list:
                            for kind in ("ordinary", "twisted"):
                                fam = restricted_multiplication_family(qs, kind, grams)
                                order = (ql, pl) if kind == "ordinary" else (pl, ql)
                                system = solve_cg(table[order[0]], table[order[1]],
                                                  table, h)
                                we = restricted_wigner_eckart(psis, fam, phis, system,
                                                              table[rl].F, args.tolerance)
                                we_rep.add(f"{pl},{ql},{rl},{kind}", we.residual, we.tol)
    reports.append(we_rep)
    return reports


def _cmd_demo(args) -> list[Report]:
    reports = []
    for label, spec in builtin_algebras().items():
        reports.append(verify_hopf_axioms(spec, args.tolerance))
        reports.append(verify_star_axioms(spec, args.tolerance))
        h = solve_haar(spec, args.tolerance)
        reports.append(certify_haar(h, args.tolerance))
    return reports


_COMMANDS = {
    "validate": _cmd_validate,
    "haar": _cmd_haar,
    "irreps": _cmd_irreps,
    "cg": _cmd_cg,
    "tensor-ops": _cmd_tensor_ops,
    "wigner-eckart": _cmd_wigner_eckart,
    "homspace": _cmd_homspace,
    "demo": _cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqglab",
        description="Verification pipelines for finite-dimensional compact "
                    "quantum group algebras given by structure constants.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--algebra", help="algebra spec JSON file")
        p.add_argument("--group", help="group table JSON file")
        p.add_argument("--construction", choices=["function", "group"],
                       default="function",
                       help="which Hopf algebra to build from --group")
        p.add_argument("--builtin", help="built-in algebra label, e.g. 'C(S3)'")
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="write the JSON report here")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        if name in ("cg", "wigner-eckart"):
            p.add_argument("--p", default=None)
            p.add_argument("--q", default=None)
            p.add_argument("--r", default=None)
        if name == "tensor-ops":
            p.add_argument("--q", default=None)
        if name in ("wigner-eckart", "homspace"):
            p.add_argument("--side", choices=["R", "L"], default=None)
        if name == "wigner-eckart":
            p.add_argument("--kind", choices=["ordinary", "twisted"], default=None)
        if name == "homspace":
            p.add_argument("--subgroup", default=None,
                           help="comma-separated element indices, e.g. '0,1'")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        reports = _COMMANDS[args.command](args)
    except (CqglabError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = cio.report_payload(
        args.command, reports, args.tolerance, args.seed,
        inputs={k: v for k, v in vars(args).items()
                if k not in ("command", "output", "format") and v is not None})
    if args.output:
        if args.format == "csv":
            Path(args.output).write_text(cio.report_to_csv(payload), encoding="utf-8")
        else:
            cio.save_report(payload, args.output)
    for rep in reports:
        print(rep.summary())
    print("RESULT:", "PASS" if payload["passed"] else "FAIL")
    return 0 if payload["passed"] else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
