import io
import json

import pytest

from indmatch.canon import canonical_form
from indmatch.cli import BUILTINS, extremal_report, main
from indmatch.graph import complement, cycle, disjoint_union, complete, g13, petersen, to_graph6, Graph


def run(argv, stdin_lines=()):
    out = io.StringIO()
    stdin = [line.encode() + b"\n" for line in stdin_lines]
    code = main(["--workers", "1", *argv], stdin=stdin, stdout=out)
    lines = [json.loads(line) for line in out.getvalue().splitlines()]
    return code, lines[:-1], lines[-1]


def test_builtins_are_canonical_constructor_output():
    assert BUILTINS["g13"] == canonical_form(g13())
    assert BUILTINS["c5"] == canonical_form(cycle(5))
    assert BUILTINS["petersen"] == canonical_form(petersen())
    assert BUILTINS["g13-complement"] == canonical_form(complement(g13()))


def test_invariants_builtin():
    code, (rec,), summary = run(["invariants", "--builtin", "g13"])
    assert code == 0 and summary["pass"] == 1
    inv = rec["invariants"]
    assert (inv["n"], inv["alpha"], inv["beta"]) == (13, 4, 6)
    code, (rec,), _ = run(["invariants", "--builtin", "c5"])
    inv = rec["invariants"]
    assert (inv["n"], inv["alpha"], inv["beta"], inv["chi"]) == (5, 2, 2, 3)


def test_invariants_stdin_and_decode_errors():
    code, recs, summary = run(["invariants"], ["A_"])
    assert code == 0 and (recs[0]["invariants"]["alpha"], recs[0]["invariants"]["beta"]) == (1, 1)
    code, recs, summary = run(["invariants"], ["A_", "A_junk", "@"])
    assert code == 1
    assert [r["status"] for r in recs] == ["pass", "error", "pass"]
    assert recs[1]["line"] == 2
    assert summary["records"] == 3 and summary["error"] == 1


def test_verify_builtin_g13_both():
    code, (rec,), summary = run(["verify", "--theorem", "both", "--builtin", "g13"])
    assert code == 0
    assert rec["report"]["theorem1"]["equality"] and rec["report"]["theorem2"]["equality"]
    assert summary["bounds"]["theorem1"]["min_slack"] == 0


def test_verify_enumerated_theorem2_equalities():
    code, recs, summary = run(
        ["verify", "--theorem", "2", "--enumerate", "--max-n", "8", "--triangle-free", "--max-degree", "4", "--connected"]
    )
    assert code == 0
    assert summary["bounds"]["theorem2"]["equality"] == 2
    tight = sorted(r["graph6"] for r in recs if r["report"]["theorem2"]["equality"])
    assert tight == sorted([to_graph6(complete(1)).decode(), to_graph6(cycle(5)).decode()]) or len(tight) == 2
    assert sum(summary[k] for k in ("pass", "fail", "inapplicable", "error")) == summary["records"] == len(recs)


def test_verify_corollary_on_g13_complement():
    code, (rec,), _ = run(["verify", "--theorem", "corollary", "--builtin", "g13", "--complement"])
    cor = rec["report"]["corollary"]
    assert code == 0 and cor["tight"] and (cor["scaled_lhs"], cor["scaled_rhs"]) == (28, 28)


def test_verify_precondition_errors_give_exit_1():
    code, (rec,), summary = run(["verify", "--theorem", "1"], [to_graph6(complete(3)).decode()])
    assert code == 1 and rec["status"] == "error" and summary["error"] == 1


def test_decompose():
    code, (rec,), _ = run(["decompose"], [to_graph6(Graph.from_edges(3, [(0, 1), (1, 2)])).decode()])
    assert rec["report"]["decomposition"]["X"] == [1]
    assert rec["report"]["ledger"]["counts"]["c1"] == 2
    code, (rec,), _ = run(["decompose", "--builtin", "c5"])
    assert rec["report"]["decomposition"]["X"] == [] and rec["report"]["ledger"]["case"] == "factor-critical"
    base = disjoint_union(cycle(5), cycle(5), complete(1))
    linked = Graph.from_edges(11, base.edges() + [(10, 0), (10, 5)])
    code, (rec,), _ = run(["decompose"], [to_graph6(linked).decode()])
    ledger = rec["report"]["ledger"]
    assert code == 0 and ledger["counts"]["c5"] == 2
    assert ledger["hypotheses"]["two_edges_per_odd_component"] is False


def test_decompose_skips_ledger_outside_class():
    code, (rec,), _ = run(["decompose"], [to_graph6(complete(4)).decode()])
    assert code == 0 and rec["report"]["ledger"] is None


@pytest.mark.parametrize("command", [["invariants"], ["verify", "--theorem", "both"], ["decompose"]])
def test_records_reproduce_from_their_graph6(command):
    code, recs, _ = run([*command, "--enumerate", "--max-n", "6", "--triangle-free", "--max-degree", "4", "--connected"])
    for rec in recs:
        _, (again,), _ = run(command, [rec["graph6"]])
        rec.pop("ms")
        again.pop("ms")
        assert again == rec


def test_workers_do_not_change_output():
    argv = ["verify", "--theorem", "both", "--enumerate", "--max-n", "7", "--triangle-free", "--max-degree", "4", "--connected"]
    outs = []
    for workers in ("1", "2"):
        out = io.StringIO()
        main(["--workers", workers, *argv], stdin=[], stdout=out)
        outs.append([{k: v for k, v in json.loads(l).items() if k != "ms"} for l in out.getvalue().splitlines()])
    assert outs[0] == outs[1]


def test_generate_streams_graph6(capsys):
    out = io.StringIO()
    assert main(["generate", "--max-n", "4", "--min-n", "4", "--triangle-free", "--connected"], stdout=out) == 0
    assert len(out.getvalue().split()) == 3


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--theorem", "3"])
    assert info.value.code == 2
    assert main(["verify", "--enumerate"], stdin=[], stdout=io.StringIO()) == 2
    assert main(["extremal", "--n", "12"], stdout=io.StringIO()) == 2


def test_extremal_small_sample():
    records, summary = extremal_report(13, samples=200, seed=1)
    assert summary["g13_found"] and summary["fail"] == 0
    assert summary["low_degree_min_alpha"] >= 5
    assert any(r["is_g13"] for r in records)
    for r in records:
        if r["invariants"]["alpha"] == 4:
            assert r["report"]["theorem1"]["scaled_lhs"] == 52 == r["report"]["theorem1"]["scaled_rhs"]
