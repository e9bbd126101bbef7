"""Command-line frontend: scenario execution and reproducible reports.

Exit codes: 0 = success / verified, 1 = verification failure, 2 = usage or
domain error.  All numeric output is exact fractions.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import monomial, towers, transforms
from .algebra import Fq, ParseError, parse_poly
from .genseq import BadParams, build_tower_seq, expand, semigroup, validate
from .reporting import Report, RunConfig, render_table
from .values import fmt_value

ENV_JOBS = "RAMVAL_JOBS"


class UsageError(ValueError):
    pass


def _field_for(p: int, q: int | None) -> Fq:
    if q is None or q == p:
        return Fq(p)
    m = 0
    qq = q
    while qq % p == 0 and qq > 1:
        qq //= p
        m += 1
    if qq != 1 or m < 1:
        raise UsageError(f"q = {q} is not a power of p = {p}")
    return Fq(p, m)


def _build_seq(args):
    fld = _field_for(args.p, args.q)
    return build_tower_seq(args.family, args.p, args.c, args.length, fld)


def cmd_value(args) -> int:
    seq = _build_seq(args)
    f = parse_poly(args.poly, seq.field)
    exp = expand(f, seq)
    val, term = exp.minimal_term()
    print(f"value = {fmt_value(val)}")
    print(f"minimal standard term: {exp.term_str(term)}")
    return 0


def cmd_semigroup(args) -> int:
    seq = _build_seq(args)
    sg = semigroup(seq, Fraction(args.bound))
    rows = [{"value": fmt_value(v)} for v in sg.elements]
    print(render_table(rows, args.format, f"semigroup values <= {args.bound}"), end="")
    return 0


def cmd_validate(args) -> int:
    seq = _build_seq(args)
    report = validate(seq)
    rows = [dict(r) for r in report.rows]
    print(render_table(rows, args.format, f"validity of {seq.label}"), end="")
    print(render_table(seq.describe(), args.format, "keys"), end="")
    print("pass" if report.ok else "FAIL")
    return 0 if report.ok else 1


def cmd_transform(args) -> int:
    seq = _build_seq(args)
    chain = transforms.ChartChain(seq)
    ok = True
    for k in range(1, args.levels + 1):
        lvl = chain.level(k)
        rows = []
        for i in range(len(lvl.values)):
            row = {
                "i": i,
                "value": fmt_value(lvl.values[i]),
                "index": lvl.indices[i] if i else "",
                "degree": lvl.degrees[i] if i else "",
            }
            if lvl.seq is not None:
                row["key"] = lvl.seq.key_str(i)
            rows.append(row)
        print(render_table(rows, args.format, f"level {k}"), end="")
        if lvl.map_from_prev is not None:
            print(f"  chart map: {lvl.map_from_prev.describe()}")
    print("pass" if ok else "FAIL")
    return 0 if ok else 1


def cmd_monomialize(args) -> int:
    try:
        a, b, c, d = (int(t) for t in args.matrix.split(","))
    except ValueError:
        raise UsageError("--matrix expects four comma-separated integers a,b,c,d")
    m = ((a, b), (c, d))
    e = monomial.det_index(m)  # raises Singular on det 0
    snf = monomial.smith_normal_form([[a, b], [c, d]])
    factors = [snf[i][i] for i in range(2)]
    idx = monomial.lattice_index_snf([[a, b], [c, d]])
    out = {
        "e": e,
        "snf_invariant_factors": factors,
        "snf_lattice_index": idx,
        "agree": idx == e,
    }
    if a > 0 and c > 0:
        red = monomial.euclidean_reduce((a, b), (c, d))
        out["reduction"] = {
            "s": red.s,
            "t1": red.t1,
            "t2": red.t2,
            "steps": red.steps,
            "determinant_identity": red.determinant_value == e,
        }
    pres = monomial.graded_presentation_rank2(m, f=1)
    out["presentation"] = pres.as_dict()
    print(json.dumps(out, indent=2))
    all_ok = out["agree"] and out.get("reduction", {}).get("determinant_identity", True)
    return 0 if all_ok else 1


def _ladder_rows(report) -> list[dict]:
    return [r.as_dict() for r in report.rows]


def cmd_tower(args) -> int:
    tower = towers.build_tower(args.p, args.c, args.length, _field_for(args.p, args.q))
    report = transforms.run_tower_ladder(tower, args.levels)
    check = towers.check_ladder_report(report)
    cfg = RunConfig(p=args.p, c=args.c, q=args.q, levels=args.levels,
                    length=args.length, fmt=args.format, seed=args.seed, jobs=1)
    rep = Report(cfg)
    rep.add("tower ladder (a, a_bar, alpha, b, d, beta, delta per extension)",
            _ladder_rows(report), True)
    rep.add("alternation / sums / defect multiplicativity",
            [check.row()], check.ok)
    print(rep.render(), end="")
    return 0 if check.ok else 1


# -- full verification report --------------------------------------------------

# task runners are module level so a process pool can pickle them


def _report_task(task) -> tuple[str, list[dict], bool]:
    kind, p, c, length, levels, seed, samples, prec, payload = task
    tower = towers.build_tower(p, c, length)
    if kind == "validity":
        seqs = {"top": tower.seq_top, "mid": tower.seq_mid, "base": tower.seq_base}
        rows, ok = [], True
        for name, seq in seqs.items():
            r = validate(seq)
            rows.append({"sequence": f"{name} ({seq.label})", "ok": r.ok})
            ok = ok and r.ok
        return "sequence validity", rows, ok
    if kind == "deviation":
        r = towers.verify_deviation_identity(tower, payload, prec=prec)
        return "deviation identities", [r.row()], r.ok
    if kind == "value-comparison":
        r = towers.verify_value_comparison(tower, payload)
        return "value comparisons", [r.row()], r.ok
    if kind == "restriction":
        r = towers.verify_restriction(tower, samples=samples, seed=seed)
        return "restriction", [r.row()], r.ok
    if kind == "parameter-links":
        r = towers.verify_parameter_links(tower, payload)
        return "parameter links", [r.row()], r.ok
    if kind == "ladder":
        report = transforms.run_tower_ladder(tower, levels)
        check = towers.check_ladder_report(report)
        rows = _ladder_rows(report) + [check.row()]
        return "tower ladder", rows, check.ok
    raise ValueError(kind)


def cmd_report(args) -> int:
    p, c = args.p, args.c
    jmax_dev = min(args.length - 1, 4 if p == 2 else 3)
    jmax_val = min(args.length - 2, 4)
    base = (p, c, args.length, args.levels, args.seed, args.samples, args.prec)
    tasks = [("validity", *base, None)]
    tasks += [("deviation", *base, j) for j in range(1, jmax_dev + 1)]
    tasks += [("value-comparison", *base, j) for j in range(1, jmax_val + 1)]
    tasks += [("restriction", *base, None)]
    tasks += [("parameter-links", *base, j) for j in range(1, args.levels)]
    tasks += [("ladder", *base, None)]

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_report_task, tasks))
    else:
        results = [_report_task(t) for t in tasks]

    cfg = RunConfig(p=p, c=c, q=args.q, levels=args.levels, length=args.length,
                    samples=args.samples, prec=args.prec, fmt=args.format,
                    seed=args.seed, jobs=args.jobs)
    rep = Report(cfg)
    merged: dict[str, tuple[list[dict], bool]] = {}
    for title, rows, ok in results:  # deterministic: task order fixed above
        rows0, ok0 = merged.get(title, ([], True))
        merged[title] = (rows0 + rows, ok0 and ok)
    for title, (rows, ok) in merged.items():
        rep.add(title, rows, ok)
    print(rep.render(), end="")
    return 0 if rep.ok else 1


def _add_common(sub, family=False):
    sub.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    sub.add_argument("--c", type=int, default=None,
                     help="tower parameter c, a positive multiple of p-1")
    sub.add_argument("--q", type=int, default=None, help="field size (a power of p)")
    sub.add_argument("--length", type=int, default=6, help="number of keys beyond the first")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--format", choices=("text", "tsv", "json", "md"), default="text")
    if family:
        sub.add_argument("--family", choices=("Q", "P", "U"), required=True,
                         help="Q: top chart, P: base chart, U: middle chart")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ramval",
        description="Exact valuations via generating sequences: values, "
        "semigroups, transforms, tower invariants.",
    )
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("value", help="valuation of a polynomial")
    _add_common(s, family=True)
    s.add_argument("poly", help="polynomial, e.g. 'y^2 + x*y + x^7'")
    s.set_defaults(func=cmd_value)

    s = sp.add_parser("semigroup", help="value semigroup up to a bound")
    _add_common(s, family=True)
    s.add_argument("--bound", default="2", help="upper bound (fraction)")
    s.set_defaults(func=cmd_semigroup)

    s = sp.add_parser("validate", help="validity report of a generating sequence")
    _add_common(s, family=True)
    s.set_defaults(func=cmd_validate)

    s = sp.add_parser("transform", help="iterated composite transforms of a sequence")
    _add_common(s, family=True)
    s.add_argument("--levels", type=int, default=3)
    s.set_defaults(func=cmd_transform)

    s = sp.add_parser("tower", help="per-level stable-form ladder of the tower")
    _add_common(s)
    s.add_argument("--levels", type=int, default=3)
    s.set_defaults(func=cmd_tower)

    s = sp.add_parser("monomialize", help="rank-2 index, SNF oracle, exponent reduction")
    s.add_argument("--matrix", required=True, help="a,b,c,d")
    s.set_defaults(func=cmd_monomialize)

    s = sp.add_parser("report", help="full verification report of the tower scenario")
    _add_common(s)
    s.add_argument("--levels", type=int, default=3)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--prec", type=int, default=None,
                   help="series precision floor for the identity checks (exact by default)")
    s.add_argument("--jobs", type=int, default=int(os.environ.get(ENV_JOBS, "1")))
    s.set_defaults(func=cmd_report)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "c", None) is None and getattr(args, "p", None) is not None:
        args.c = args.p - 1  # minimal admissible tower parameter
    try:
        return args.func(args)
    except ParseError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return 2
    except (UsageError, BadParams, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except ArithmeticError as ex:
        print(f"domain error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
