"""Command-line entry point (``python -m lexpea`` or ``lexpea``).

Exit codes: 0 all pass, 1 a property fails, 2 parse error, 3 axiom
violation, 4 implication-audit violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .descriptors import DescriptorError, parse_group
from .enumeration import enumerate_peas
from .groups import BudgetExceeded, CarrierError, Integers, Lex, Status
from .nperfect import NDecomposition, build_strong_nperfect, find_n_decomposition
from .pea import PeaParseError, check_axioms, dumps_pea, gamma, loads_pea, materialize
from .refine import (
    InvalidQuadruple,
    RefineError,
    builtin_oracle,
    format_table,
    interval_group_oracle,
    lift_group_refine,
    parse_quadruple,
    random_lex_quadruples,
    validate_table,
)
from .riesz import PROPS, check_property, implication_audit, profile, _Ctx
from .suite import run_suite

OK, FAILS, PARSE, AXIOMS, AUDIT = 0, 1, 2, 3, 4
DEFAULT_SEED = 42


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for ln in text_lines:
            print(ln)


def _load(path: str):
    try:
        with open(path) as fh:
            return loads_pea(fh.read())
    except OSError as exc:
        raise PeaParseError(f"cannot read {path}: {exc.strerror}") from None


# -- subcommands -----------------------------------------------------------------
def cmd_check(args) -> int:
    E = _load(args.file)
    ax = check_axioms(E)
    if not ax:
        _emit(args, [f"axioms: VIOLATION {ax}"], {"axioms": {"valid": False, "axiom": ax.axiom, "witness": ax.witness}})
        return AXIOMS
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    unknown = [p for p in props if p not in PROPS]
    if unknown:
        raise PeaParseError(f"unknown properties: {', '.join(unknown)}")
    ctx = _Ctx(E)
    reports = [check_property(E, p, ctx) for p in props]
    _emit(
        args,
        ["axioms: VALID"] + [r.line() for r in reports],
        {"axioms": {"valid": True}, "properties": [r.to_json() for r in reports]},
    )
    return OK if all(r.holds for r in reports) else FAILS


def cmd_construct(args) -> int:
    G = parse_group(args.group)
    try:
        u = G.parse(args.unit)
    except (CarrierError, ValueError) as exc:
        raise PeaParseError(f"bad unit {args.unit!r}: {exc}") from None
    E = gamma(G, u)
    su = G.strong_unit_verdict(u)
    if su.status is not Status.CERTIFIED:
        E.warnings.append(f"strong unit not certified ({su.status.value})")
    if args.materialize is not None:
        F = materialize(E, args.materialize)
        text = dumps_pea(F)
        if args.json:
            _emit(args, [], {"group": G.desc, "unit": G.format(u), "size": F.n, "pea": text, "warnings": E.warnings})
        else:
            for w in E.warnings:
                print(f"# warning: {w}")
            sys.stdout.write(text)
        return OK
    lines = [f"group: {G.desc}", f"unit: {G.format(u)}", f"strong unit: {su.status.value} {su.reason}".rstrip()]
    lines += [f"warning: {w}" for w in E.warnings]
    _emit(args, lines, {"group": G.desc, "unit": G.format(u), "strong_unit": su.status.value, "warnings": E.warnings})
    return OK


def cmd_verify(args) -> int:
    items = run_suite(args.seed)
    lines = [f"# seed={args.seed}"] + [i.line() for i in items]
    payload = {
        "seed": args.seed,
        "items": [{"name": i.name, "passed": i.passed, "detail": i.detail} for i in items],
    }
    _emit(args, lines, payload)
    return OK if all(i.passed for i in items) else FAILS


def cmd_enumerate(args) -> int:
    lines, catalog, violations = [], [], 0
    for E in enumerate_peas(args.max_size):
        prof = profile(E)
        audit = implication_audit(E, fatal=False)
        violations += len(audit.violations)
        status = " ".join(f"{p}={'H' if r.holds else 'F'}" for p, r in prof.items())
        lines.append(f"{E.name} n={E.n} {status}")
        lines.append("  " + " ".join(f"{a}+{b}={s}" for (a, b), s in sorted(E.table().items()) if a != "0" and b != "0"))
        for v in audit.violations:
            lines.append(f"  AUDIT VIOLATION: {v}")
        catalog.append({
            "name": E.name,
            "size": E.n,
            "table": dumps_pea(E),
            "profile": {p: r.holds for p, r in prof.items()},
            "violations": audit.violations,
        })
    counts: dict[int, int] = {}
    for c in catalog:
        counts[c["size"]] = counts.get(c["size"], 0) + 1
    lines.append("counts: " + " ".join(f"{k}:{v}" for k, v in sorted(counts.items())))
    lines.append(f"audit violations: {violations}")
    _emit(args, lines, {"catalog": catalog, "counts": counts, "violations": violations})
    return AUDIT if violations else OK


def _lex_factor(desc: str):
    L = parse_group(desc)
    if not (isinstance(L, Lex) and isinstance(L.left, Integers) and L.left.rank == 1):
        raise DescriptorError(f"lift needs a descriptor of the form lex(Z,<group>), got {desc!r}")
    return L, L.right


def cmd_lift(args) -> int:
    L, G = _lex_factor(args.group)
    O = builtin_oracle(G)
    if args.route == "extend":
        refine = interval_group_oracle(O, G).refine
    else:
        refine = lambda *q: lift_group_refine(O, G, *q)  # noqa: E731
    header = []
    if args.batch:
        seed, count = args.batch
        header.append(f"# seed={seed}")
        quads = random_lex_quadruples(G, seed, count)
    elif args.input:
        with open(args.input) as fh:
            quads = [parse_quadruple(ln, L) for ln in fh if ln.strip() and not ln.startswith("#")]
    elif args.quadruple:
        quads = [parse_quadruple(args.quadruple, L)]
    else:
        raise PeaParseError("give a quadruple, --batch SEED COUNT or --input FILE")
    lines, records, failed = list(header), [], 0
    for q in quads:
        qtext = f"{L.format(q[0])};{L.format(q[1])}={L.format(q[2])};{L.format(q[3])}"
        try:
            t = refine(*q)
            problems = validate_table(L, q, t)
        except (InvalidQuadruple, RefineError, BudgetExceeded) as exc:
            t, problems = None, [str(exc)]
        if problems:
            failed += 1
            lines.append(f"FAIL {qtext}: {'; '.join(problems)}")
            records.append({"quadruple": qtext, "ok": False, "problems": problems})
        else:
            lines.append(f"{qtext} -> {format_table(L, t)}")
            records.append({"quadruple": qtext, "ok": True, "table": format_table(L, t), "com": t.com})
    if len(quads) > 1:
        lines.append(f"validated {len(quads) - failed}/{len(quads)}")
    payload: dict[str, Any] = {"group": L.desc, "route": args.route, "results": records}
    if args.batch:
        payload["seed"] = args.batch[0]
    _emit(args, lines, payload)
    return FAILS if failed else OK


def cmd_nperfect(args) -> int:
    if os.path.exists(args.target):
        E = _load(args.target)
        warnings: list[str] = []
    else:
        built = build_strong_nperfect(parse_group(args.target), args.n)
        E = materialize(built.algebra, args.budget)
        warnings = built.warnings
    d = find_n_decomposition(E, args.n, brute_force=args.brute_force)
    lines = [f"warning: {w}" for w in warnings] + [d.report()]
    payload: dict[str, Any] = {"n": args.n, "found": bool(d), "warnings": warnings}
    if isinstance(d, NDecomposition):
        payload["slices"] = [sorted(s) for s in d.slices]
        payload["maximal_ideal"] = sorted(d.maximal_ideal)
    else:
        payload["reason"] = d.reason
    _emit(args, lines, payload)
    return OK if d else FAILS


# -- parser ------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lexpea", description="Pseudo effect algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "check axioms and Riesz properties of a 'pea v1' file")
    sp.add_argument("file")
    sp.add_argument("--props", default=",".join(PROPS), help=f"comma list from {','.join(PROPS)}")

    sp = add("construct", cmd_construct, "build Gamma(G,u) from a group descriptor")
    sp.add_argument("group")
    sp.add_argument("--unit", required=True)
    sp.add_argument("--materialize", type=int, metavar="BUDGET")

    sp = add("verify-paper", cmd_verify, "run the fixed verification suite")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sp = add("enumerate", cmd_enumerate, "enumerate small algebras with property profiles")
    sp.add_argument("max_size", type=int)

    sp = add("lift", cmd_lift, "refine quadruples in (Z x_lex G)^+")
    sp.add_argument("group", help="descriptor lex(Z,<group>)")
    sp.add_argument("quadruple", nargs="?", help="'(m,g);(m,g)=(m,g);(m,g)'")
    sp.add_argument("--batch", nargs=2, type=int, metavar=("SEED", "COUNT"))
    sp.add_argument("--input", metavar="FILE")
    sp.add_argument("--route", choices=("rdp", "extend"), default="rdp",
                    help="rdp: direct case tables; extend: via the unit interval (com-preserving)")

    sp = add("nperfect", cmd_nperfect, "find an n-decomposition")
    sp.add_argument("target", help="a 'pea v1' file or a group descriptor G for Gamma(Z x_lex G,(n,0))")
    sp.add_argument("n", type=int)
    sp.add_argument("--brute-force", action="store_true")
    sp.add_argument("--budget", type=int, default=10_000)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PeaParseError, DescriptorError, CarrierError, InvalidQuadruple) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return FAILS


if __name__ == "__main__":
    sys.exit(main())
