"""Command-line entry points: ``verify``, ``table1`` and ``search``.

Exit codes: 0 pass, 1 verdict mismatch, 2 bad input or asset,
3 budget-indeterminate, 4 search exhausted.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .catalog import AssetError, case_path, load_cases
from .perm import format_cycles
from .recognize import search_factor_subgroup
from .report import (SuiteReport, resolve_group, resolve_subgroup, run_cases,
                     verdict_line)

TABLE_ROWS = range(1, 29)


def parse_rows(text: str) -> list[int]:
    """``"1,4,5-8"`` -> [1, 4, 5, 6, 7, 8]; the empty string selects nothing."""
    rows: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        lo, dash, hi = part.partition("-")
        try:
            a, b = int(lo), int(hi if dash else lo)
        except ValueError:
            raise ValueError(f"bad row selection {part!r}") from None
        if a > b or a not in TABLE_ROWS or b not in TABLE_ROWS:
            raise ValueError(f"rows must lie in 1..28, got {part!r}")
        rows.extend(r for r in range(a, b + 1) if r not in rows)
    return rows


def _emit(report: SuiteReport, fmt: str, out: str | None) -> None:
    text = report.to_json() if fmt == "json" else report.to_markdown()
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    path = Path(args.case_file)
    try:
        cases = load_cases(path)
    except AssetError as e:
        print(f"INPUT-ERROR   {e}", file=sys.stderr)
        return 2
    results = run_cases(cases, threads=args.threads, budget_factor=args.budget_cap,
                        base_dir=path.parent)
    for r in results:
        print(verdict_line(r))
    report = SuiteReport(results)
    if args.format or args.out:
        _emit(report, args.format or "json", args.out)
    return report.exit_code


def cmd_table1(args) -> int:
    try:
        rows = parse_rows(args.rows)
        cases = [c for r in rows for c in load_cases(case_path(r))]
    except (ValueError, AssetError) as e:
        print(f"INPUT-ERROR   {e}", file=sys.stderr)
        return 2
    results = run_cases(cases, threads=args.threads, budget_factor=args.budget_cap)
    for r in results:
        print(verdict_line(r), file=sys.stderr)
    report = SuiteReport(results, rows)
    _emit(report, args.format, args.out)
    return report.exit_code


def cmd_search(args) -> int:
    try:
        g = resolve_group(args.group)
        k_gens = resolve_subgroup(args.k, g)
        orders = tuple(int(x) for x in args.orders.split(",")) if args.orders else None
        if orders is not None and len(orders) != 2:
            raise ValueError("--orders takes two integers")
        res = search_factor_subgroup(g, k_gens, args.n, args.attempts, args.seed, orders=orders)
    except (AssetError, ValueError) as e:
        print(f"INPUT-ERROR   {e}", file=sys.stderr)
        return 2
    doc = res.as_dict()
    doc["transcript"] = res.transcript
    doc.update(group=args.group, k=args.k, n=args.n, attempts=args.attempts)
    if res.found:
        record = {
            "name": args.name or f"{g.name}__A{args.n}_seed{args.seed}",
            "kind": "perm-asset",
            "degree": g.degree,
            "expected_order": str(math.factorial(args.n) // 2),
            "generators": [format_cycles(h) for h in res.h_gens],
            "provenance": f"search in {args.group} against {args.k}, seed {args.seed}, "
                          f"attempt {res.attempt}",
            "claims": {"alternating": args.n},
        }
        doc["record"] = record
        if args.out:
            Path(args.out).write_text(json.dumps(record, indent=1) + "\n", encoding="utf-8")
    text = json.dumps(doc, indent=1) + "\n"
    if args.transcript:
        Path(args.transcript).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if res.found else 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="factorforge",
                                description="Verify factorizations G = HK of permutation groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--threads", type=int, default=None,
                        help="worker processes across cases (default: all cores)")
        sp.add_argument("--budget-cap", type=float, default=2.0,
                        help="coset-orbit budget as a multiple of |G:K| (default 2)")

    v = sub.add_parser("verify", help="verify the cases in a case file")
    v.add_argument("case_file")
    v.add_argument("--format", choices=("json", "md"), default=None)
    common(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table1", help="run the bundled table of factorizations")
    t.add_argument("--rows", default="1-28", help="selection such as 1,4,5-8 (default 1-28)")
    t.add_argument("--format", choices=("json", "md"), default="md")
    common(t)
    t.set_defaults(func=cmd_table1)

    s = sub.add_parser("search", help="seeded random search for a factor A_n")
    s.add_argument("--group", required=True,
                   help="asset name, record path, A<n>, S<n>, or <group>wrS2")
    s.add_argument("--k", required=True, help="group spec, or stab:<point> for a point stabilizer")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--attempts", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--orders", help="orders of the two generators, e.g. 3,4")
    s.add_argument("--name", help="name for the emitted group record")
    s.add_argument("--out", help="write the group record for H here on success")
    s.add_argument("--transcript", help="write the transcript here instead of stdout")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
