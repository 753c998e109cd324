"""Command-line entry point: JSONL verdict records over graph6 input.

Subcommands: ``invariants``, ``verify``, ``decompose``, ``extremal``, ``generate``.
Input comes from ``--builtin NAME``, ``--enumerate`` with class flags, or
newline-delimited graph6 on stdin. Exit status is 0 when every record
passes, 1 when any record fails or errors, 2 on usage or format errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator

from .canon import canonical_form
from .decomposition import gallai_edmonds, verify_ge
from .enumeration import ClassConstraints, IngestError, enumerate_graphs, ingest_graph6
from .graph import Graph, GraphError, complement, degree_stats, from_graph6, g13, to_graph6
from .random_graphs import random_low_degree_member
from .solvers import CHROMATIC_MAX_ORDER, chromatic_number, clique_number, independence_number, max_matching
from .verifier import (
    THEOREM_1,
    THEOREM_2,
    PreconditionError,
    check_bound,
    chi_binding_check,
    classify_equality,
    proof_ledger,
    require_class,
)

# Canonical graph6 of the constructors' output; tests pin these to the constructors.
BUILTINS = {
    "g13": b"L@OOXDDeTPYOx?",
    "c5": b"DLo",
    "petersen": b"I@HIcUSw?",
    "g13-complement": b"LJ]\\]jbnnVZx|[",
}


def _invariants(g: Graph, with_chi: bool = True) -> dict:
    lo, hi, _ = degree_stats(g)
    a, b, w = independence_number(g), max_matching(g), clique_number(g)
    for wit in (a, b, w):
        wit.check(g)
    out = {"n": g.n, "m": g.m, "min_degree": lo, "max_degree": hi,
           "alpha": a.value, "beta": b.value, "omega": w.value}
    if with_chi and g.n <= CHROMATIC_MAX_ORDER:
        chi = chromatic_number(g)
        chi.check(g)
        out["chi"] = chi.value
        out["witnesses"] = {"independent_set": list(a.certificate), "matching": [list(e) for e in b.certificate],
                            "clique": list(w.certificate), "coloring": list(chi.certificate)}
    else:
        out["witnesses"] = {"independent_set": list(a.certificate), "matching": [list(e) for e in b.certificate],
                            "clique": list(w.certificate)}
    return out


def run_invariants(g: Graph, _opt: str | None = None) -> dict:
    return {"status": "pass", "invariants": _invariants(g)}


def run_verify(g: Graph, theorem: str) -> dict:
    if theorem == "corollary":
        try:
            verdict = chi_binding_check(g)
        except PreconditionError as exc:
            return {"status": "error", "error": str(exc), "witness": exc.witness}
        return {"status": verdict.status, "invariants": {"n": g.n}, "report": {"corollary": verdict.to_dict()}}
    specs = {"1": [THEOREM_1], "2": [THEOREM_2], "both": [THEOREM_1, THEOREM_2]}[theorem]
    try:
        require_class(g)
    except PreconditionError as exc:
        return {"status": "error", "error": str(exc), "witness": exc.witness}
    a, b = independence_number(g), max_matching(g)
    lo, hi, _ = degree_stats(g)
    report = {}
    status = "pass"
    for spec in specs:
        bound = check_bound(g, spec, a, b)
        cls = classify_equality(g, spec)
        entry = bound.to_dict()
        entry["equality_forms"] = cls.to_dict()["components"]
        entry["equality_forms_consistent"] = cls.consistent
        report[spec.name] = entry
        if not bound.holds or not cls.consistent:
            status = "fail"
    inv = {"n": g.n, "m": g.m, "min_degree": lo, "max_degree": hi, "alpha": a.value, "beta": b.value}
    return {"status": status, "invariants": inv, "report": report}


def run_decompose(g: Graph, _opt: str | None = None) -> dict:
    d = gallai_edmonds(g)
    verdict = verify_ge(g, d)
    report = {"decomposition": d.to_dict(), "verification": verdict.to_dict()}
    status = "pass" if verdict.ok else "fail"
    try:
        ledger = proof_ledger(g, d)
    except PreconditionError as exc:
        report["ledger"] = None
        report["ledger_skipped"] = str(exc)
    else:
        report["ledger"] = ledger.to_dict()
        if ledger.violations:
            status = "fail"
    return {"status": status, "invariants": {"n": g.n, "m": g.m}, "report": report}


COMMANDS: dict[str, Callable[[Graph, str | None], dict]] = {
    "invariants": run_invariants,
    "verify": run_verify,
    "decompose": run_decompose,
}


def make_record(command: str, option: str | None, g6: bytes) -> dict:
    """One self-contained verdict record; rerunning on ``graph6`` reproduces it."""
    start = time.perf_counter()
    g = from_graph6(g6)
    body = COMMANDS[command](g, option)
    record = {"graph6": g6.decode("ascii"), "command": command}
    if option is not None:
        record["theorem"] = option
    record.update(body)
    record["ms"] = round((time.perf_counter() - start) * 1000, 3)
    return record


def _record_job(job: tuple[str, str | None, bytes] | dict) -> dict:
    if isinstance(job, dict):  # decode error record, passed through in input order
        return job
    return make_record(*job)


def _inputs(args: argparse.Namespace, stdin: Iterable[bytes]) -> Iterator[bytes | dict]:
    flip = complement if getattr(args, "complement", False) else (lambda g: g)
    if getattr(args, "builtin", None):
        yield to_graph6(flip(from_graph6(BUILTINS[args.builtin])))
        return
    if getattr(args, "enumerate", False):
        for g in enumerate_graphs(constraints_from_args(args), workers=args.workers):
            yield to_graph6(flip(g))
        return
    for item in ingest_graph6(stdin):
        if isinstance(item, IngestError):
            yield {"status": "error", "line": item.line_number, "input": item.text, "error": item.message}
        else:
            yield to_graph6(flip(item[0]))


def constraints_from_args(args: argparse.Namespace) -> ClassConstraints:
    if args.max_n is None:
        raise GraphError("--enumerate needs --max-n")
    return ClassConstraints(
        max_order=args.max_n,
        min_order=args.min_n,
        triangle_free=args.triangle_free,
        max_degree=args.max_degree,
        connected=args.connected,
        regular_degree=args.regular,
        min_degree=args.min_degree,
    )


def _map_ordered(jobs: Iterable, fn: Callable, workers: int) -> Iterator:
    if workers <= 1:
        for job in jobs:
            yield fn(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, jobs, chunksize=16)


class Summary:
    def __init__(self, command: str, option: str | None) -> None:
        self.command = command
        self.option = option
        self.status_counts = {"pass": 0, "fail": 0, "inapplicable": 0, "error": 0}
        self.equality: dict[str, int] = {}
        self.strict: dict[str, int] = {}
        self.min_slack: dict[str, tuple[int, str]] = {}

    def add(self, record: dict) -> None:
        self.status_counts[record["status"]] += 1
        for name, rep in (record.get("report") or {}).items():
            if not isinstance(rep, dict) or "slack" not in rep:
                continue
            bucket = self.equality if rep["equality"] else self.strict
            bucket[name] = bucket.get(name, 0) + 1
            if name not in self.min_slack or rep["slack"] < self.min_slack[name][0]:
                self.min_slack[name] = (rep["slack"], record["graph6"])

    @property
    def ok(self) -> bool:
        return not self.status_counts["fail"] and not self.status_counts["error"]

    def to_dict(self) -> dict:
        out: dict = {"summary": True, "command": self.command, "records": sum(self.status_counts.values()),
                     **self.status_counts}
        if self.option is not None:
            out["theorem"] = self.option
        if self.min_slack:
            out["bounds"] = {
                name: {"equality": self.equality.get(name, 0), "strict": self.strict.get(name, 0),
                       "min_slack": slack, "min_slack_graph6": g6}
                for name, (slack, g6) in sorted(self.min_slack.items())
            }
        return out


def _emit(out, obj: dict) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def run_records(args: argparse.Namespace, stdin: Iterable[bytes], out) -> int:
    option = getattr(args, "theorem", None)
    summary = Summary(args.command, option)
    jobs = (item if isinstance(item, dict) else (args.command, option, item) for item in _inputs(args, stdin))
    for record in _map_ordered(jobs, _record_job, args.workers):
        summary.add(record)
        _emit(out, record)
    _emit(out, summary.to_dict())
    return 0 if summary.ok else 1


def run_generate(args: argparse.Namespace, out) -> int:
    count = 0
    for g in enumerate_graphs(constraints_from_args(args), workers=args.workers):
        out.write(to_graph6(g).decode("ascii") + "\n")
        count += 1
    print(f"{count} graphs", file=sys.stderr)
    return 0


def extremal_report(n: int, samples: int, seed: int, workers: int = 1) -> tuple[list[dict], dict]:
    """Sweep connected 4-regular triangle-free graphs of order ``n`` (only 13 is supported).

    Also spot-checks that random order-13 class members with a vertex of
    degree <= 3 have independence number at least 5.
    """
    if n != 13:
        raise GraphError("extremal sweep supports only n = 13")
    cons = ClassConstraints(max_order=n, min_order=n, triangle_free=True, max_degree=4,
                            connected=True, regular_degree=4)
    target = canonical_form(g13())
    records = []
    found = False
    alpha4 = 0
    for g in enumerate_graphs(cons, workers=workers):
        start = time.perf_counter()
        label = canonical_form(g)
        a, b = independence_number(g), max_matching(g)
        r1 = check_bound(g, THEOREM_1, a, b)
        r2 = check_bound(g, THEOREM_2, a, b)
        is_g13 = label == target
        found |= is_g13
        if a.value == 4:
            alpha4 += 1
            ok = r1.equality and r2.equality and b.value == 6
        else:
            ok = r1.holds and r2.holds and not r1.equality and not r2.equality
        records.append({
            "graph6": label.decode("ascii"), "command": "extremal", "canonical": True, "is_g13": is_g13,
            "invariants": {"n": g.n, "m": g.m, "alpha": a.value, "beta": b.value},
            "report": {"theorem1": r1.to_dict(), "theorem2": r2.to_dict()},
            "status": "pass" if ok else "fail",
            "ms": round((time.perf_counter() - start) * 1000, 3),
        })
    rng = random.Random(seed)
    min_alpha = None
    sample_fail = None
    for _ in range(samples):
        g = random_low_degree_member(n, rng)
        a = independence_number(g).value
        min_alpha = a if min_alpha is None else min(min_alpha, a)
        if a < 5 and sample_fail is None:
            sample_fail = to_graph6(g).decode("ascii")
    summary = {
        "summary": True, "command": "extremal", "n": n, "graphs": len(records), "alpha4": alpha4,
        "pass": sum(r["status"] == "pass" for r in records), "fail": sum(r["status"] == "fail" for r in records),
        "g13_found": found, "g13_canonical": target.decode("ascii"),
        "low_degree_samples": samples, "low_degree_min_alpha": min_alpha, "low_degree_counterexample": sample_fail,
    }
    return records, summary


def run_extremal(args: argparse.Namespace, out) -> int:
    records, summary = extremal_report(args.n, args.samples, args.seed, args.workers)
    for r in records:
        _emit(out, r)
    _emit(out, summary)
    ok = summary["fail"] == 0 and summary["g13_found"] and summary["low_degree_counterexample"] is None
    return 0 if ok else 1


def _add_input_flags(p: argparse.ArgumentParser, enumerate_flags: bool = True) -> None:
    p.add_argument("--builtin", choices=sorted(BUILTINS), help="use a built-in graph instead of stdin")
    if enumerate_flags:
        p.add_argument("--enumerate", action="store_true", help="generate the input class instead of reading stdin")
    p.add_argument("--complement", action="store_true", help="process the complement of each input graph")
    _add_class_flags(p)


def _add_class_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-n", type=int, help="largest order to generate")
    p.add_argument("--min-n", type=int, default=1, help="smallest order to generate")
    p.add_argument("--triangle-free", action="store_true")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--min-degree", type=int)
    p.add_argument("--regular", type=int, metavar="D")
    p.add_argument("--connected", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="indmatch", description=__doc__.splitlines()[0])
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                        help="parallel worker processes (output order does not depend on it)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="exact n, m, degrees, alpha, beta, omega, chi with witnesses")
    _add_input_flags(p)
    p = sub.add_parser("verify", help="check the bounds or the chi-binding corollary")
    p.add_argument("--theorem", choices=["1", "2", "both", "corollary"], default="both")
    _add_input_flags(p)
    p = sub.add_parser("decompose", help="Gallai-Edmonds decomposition, its verification and the proof ledger")
    _add_input_flags(p)
    p = sub.add_parser("extremal", help="sweep 4-regular triangle-free graphs on 13 vertices")
    p.add_argument("--n", type=int, default=13)
    p.add_argument("--samples", type=int, default=10_000, help="random low-degree graphs to spot-check")
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("generate", help="write a graph class as graph6 lines")
    _add_class_flags(p)
    return parser


def main(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = stdout or sys.stdout
    if args.workers < 1:
        parser.error("--workers must be positive")
    try:
        if args.command == "extremal":
            return run_extremal(args, out)
        if args.command == "generate":
            return run_generate(args, out)
        source = stdin if stdin is not None else sys.stdin.buffer
        return run_records(args, source, out)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
