"""Running factorization cases and assembling suite reports."""
from __future__ import annotations

import json
import math
import os
import platform
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import (AssetError, FactorizationCase, GroupHandle, build_natural,
                      build_product_action_wreath, load_group, load_group_record)
from .chain import ChainError, build_chain
from .factorize import BudgetExhausted, FactorizationError, verify_factorization
from .perm import Permutation, PermutationError
from .recognize import recognize_alternating, search_factor_subgroup

# Per-case status values, shared by the JSON and Markdown renderings.
PASS, FAIL, INPUT, INDETERMINATE, EXHAUSTED = "pass", "fail", "input-error", "indeterminate", "exhausted"
EXIT_CODES = {PASS: 0, FAIL: 1, INPUT: 2, INDETERMINATE: 3, EXHAUSTED: 4}
RECOGNITION_SEED = 0


def resolve_group(spec: str, base_dir: Path | None = None, *,
                  check_claims: bool = True) -> GroupHandle:
    """An asset name, a path to a record file, ``A<n>``/``S<n>``, or ``<spec>wrS2``."""
    if spec.endswith("wrS2"):
        return build_product_action_wreath(resolve_group(spec[:-4], base_dir))
    m = re.fullmatch(r"([AS])(\d+)", spec)
    if m:
        return build_natural(int(m.group(2)), "alternating" if m.group(1) == "A" else "symmetric")
    if spec.endswith(".json"):
        path = Path(spec)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        return load_group_record(path, check_claims=check_claims)
    return load_group(spec, check_claims=check_claims)


def point_stabilizer_gens(g: GroupHandle, point: int) -> list[Permutation]:
    """Generators of the stabilizer of a 0-based point."""
    if not 0 <= point < g.degree:
        raise AssetError(f"point {point + 1} is outside 1..{g.degree}")
    c = build_chain(g.chain.generator_arrays(), g.degree, base_prefix=(point,))
    return c.stabilizer(1).strong_generators


def resolve_subgroup(spec: str, g: GroupHandle, base_dir: Path | None = None) -> list[Permutation]:
    """K given as a group spec or as ``stab:<point>`` (1-based) inside G."""
    if spec.startswith("stab:"):
        try:
            point = int(spec[5:]) - 1
        except ValueError:
            raise AssetError(f"bad stabilizer spec {spec!r}") from None
        return point_stabilizer_gens(g, point)
    return resolve_group(spec, base_dir).generators


@dataclass
class CaseResult:
    row: int | None
    L: str
    H: str
    K: str
    n: int | None
    label: str
    status: str
    expect_holds: bool
    holds: bool | None = None
    index: int | None = None
    orbit_size: int | None = None
    intersection_order: int | None = None
    expected_intersection_order: int | None = None
    exact: bool | None = None
    cross_check: bool | None = None
    recognition: str | None = None
    seeds: dict = field(default_factory=dict)
    message: str = ""
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        big = lambda v: None if v is None else str(v)  # noqa: E731
        return {
            "row": self.row, "L": self.L, "H": self.H, "K": self.K, "n": self.n,
            "label": self.label, "status": self.status, "expect_holds": self.expect_holds,
            "holds": self.holds, "index": big(self.index), "orbit_size": big(self.orbit_size),
            "intersection_order": big(self.intersection_order),
            "expected_intersection_order": big(self.expected_intersection_order),
            "exact": self.exact, "cross_check": self.cross_check,
            "recognition": self.recognition, "seeds": self.seeds, "message": self.message,
            "wall_time": round(self.wall_time, 3),
        }

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def run_case(case: FactorizationCase, *, budget_factor: float = 2.0,
             base_dir: Path | None = None) -> CaseResult:
    """Verify one case; never raises for bad input, the status says what happened."""
    t0 = time.perf_counter()
    h_name = case.H if isinstance(case.H, str) else "search"
    res = CaseResult(case.row, case.L, h_name, case.K, case.n, case.label, INPUT,
                     case.expect_holds, expected_intersection_order=case.expected_intersection_order)
    try:
        g = resolve_group(case.L, base_dir)
        k_gens = resolve_subgroup(case.K, g, base_dir)
        if case.h_is_search:
            recipe = case.H["search"]
            found = search_factor_subgroup(g, k_gens, int(recipe["n"]), int(recipe["attempts"]),
                                           int(recipe["seed"]))
            res.seeds["search"] = int(recipe["seed"])
            if not found.found:
                res.status = EXHAUSTED
                res.message = f"no A{recipe['n']} found in {recipe['attempts']} attempts"
                return _done(res, t0)
            h_gens = found.h_gens
            res.H = f"search(seed={recipe['seed']}, attempt={found.attempt})"
            h_chain = build_chain(h_gens, g.degree)
        else:
            # with n given, recognition runs below instead of the record's claim check
            h = resolve_group(case.H, base_dir, check_claims=case.n is None)
            h_gens, h_chain = h.generators, h.chain
        if case.n is not None:
            rec = recognize_alternating(h_chain, case.n, rng=RECOGNITION_SEED)
            res.seeds["recognition"] = RECOGNITION_SEED
            res.recognition = rec.overall
        k_order = build_chain(k_gens, g.degree).order
        budget = max(1, math.floor(budget_factor * (g.order // k_order)))
        verdict = verify_factorization(g, h_gens, k_gens, budget=budget)
    except BudgetExhausted as e:
        res.status = INDETERMINATE
        res.message = f"coset orbit exceeded the budget ({e.budget})"
        return _done(res, t0)
    except (AssetError, FactorizationError, PermutationError, ChainError, ValueError) as e:
        res.message = str(e)
        return _done(res, t0)
    res.holds = verdict.holds
    res.index = verdict.index
    res.orbit_size = verdict.orbit_size
    res.intersection_order = verdict.intersection_order
    res.exact = verdict.exact
    res.cross_check = verdict.cross_check_passed
    ok = verdict.holds == case.expect_holds
    if case.expected_intersection_order is not None:
        ok = ok and verdict.intersection_order == case.expected_intersection_order
    if res.recognition is not None and res.recognition != "accepted":
        ok = False
        res.message = f"H is not recognized as A{case.n}"
    res.status = PASS if ok else FAIL
    return _done(res, t0)


def _done(res: CaseResult, t0: float) -> CaseResult:
    res.wall_time = time.perf_counter() - t0
    return res


def _run_indexed(args):
    case, budget_factor, base_dir = args
    return run_case(case, budget_factor=budget_factor, base_dir=base_dir)


def run_cases(cases: list[FactorizationCase], *, threads: int | None = None,
              budget_factor: float = 2.0, base_dir: Path | None = None) -> list[CaseResult]:
    """Cases run in worker processes; the result order matches the input order."""
    threads = threads or os.cpu_count() or 1
    jobs = [(c, budget_factor, base_dir) for c in cases]
    if threads <= 1 or len(cases) <= 1:
        return [_run_indexed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, len(cases))) as pool:
        return list(pool.map(_run_indexed, jobs))


@dataclass
class SuiteReport:
    results: list[CaseResult]
    rows: list[int] = field(default_factory=list)

    @property
    def totals(self) -> dict:
        counts = {s: 0 for s in EXIT_CODES}
        for r in self.results:
            counts[r.status] += 1
        counts["cases"] = len(self.results)
        counts["wall_time"] = round(sum(r.wall_time for r in self.results), 3)
        return counts

    @property
    def exit_code(self) -> int:
        codes = {r.exit_code for r in self.results} - {0}
        if not codes:
            return 0
        # wrong mathematics outranks bad data, which outranks the budget verdicts
        for c in (1, 2, 3, 4):
            if c in codes:
                return c
        return 1

    def stamp(self) -> dict:
        return {"factorforge": __version__, "python": platform.python_version(),
                "numpy": np.__version__}

    def as_dict(self) -> dict:
        return {"rows": self.rows, "cases": [r.as_dict() for r in self.results],
                "totals": self.totals, "toolchain": self.stamp(),
                "seeds": {"recognition": RECOGNITION_SEED}}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1) + "\n"

    def to_markdown(self) -> str:
        lines = ["| row | L | n | H | K | holds | index | orbit | H∩K | exact | status | time (s) |",
                 "|---|---|---|---|---|---|---|---|---|---|---|---|"]
        fmt = lambda v: "" if v is None else str(v)  # noqa: E731
        for r in self.results:
            lines.append("| " + " | ".join([
                fmt(r.row), r.L, fmt(r.n), r.H, r.K, fmt(r.holds), fmt(r.index),
                fmt(r.orbit_size), fmt(r.intersection_order), fmt(r.exact), r.status,
                f"{r.wall_time:.2f}"]) + " |")
        t = self.totals
        lines.append("")
        lines.append(f"{t['cases']} cases: {t[PASS]} pass, {t[FAIL]} fail, {t[INPUT]} input errors, "
                     f"{t[INDETERMINATE]} indeterminate, {t[EXHAUSTED]} exhausted")
        return "\n".join(lines) + "\n"


def verdict_line(r: CaseResult) -> str:
    where = f"row {r.row}: " if r.row is not None else ""
    body = f"{r.L} = {r.H} * {r.K}"
    if r.holds is None:
        return f"{r.status.upper():13s} {where}{body}  {r.message}"
    return (f"{r.status.upper():13s} {where}{body}  holds={r.holds} |H∩K|={r.intersection_order} "
            f"orbit={r.orbit_size}/{r.index} exact={r.exact} ({r.wall_time:.2f}s)"
            + (f"  {r.message}" if r.message else ""))
