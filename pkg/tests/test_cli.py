from __future__ import annotations

import json

import pytest

from cyclic_modal.cli import main
from cyclic_modal.syntax import from_json, parse
from cyclic_modal.graph import isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_formats(capsys):
    code, out, _ = run(capsys, "parse", "--in", "fix p. [] p")
    assert code == 0 and out.strip() == "fix x0. [] x0"
    code, out, _ = run(capsys, "parse", "--in", "p /\\ q", "--out", "json")
    assert code == 0 and isomorphic(from_json(out), parse("p /\\ q"))
    code, out, _ = run(capsys, "parse", "--in", "p /\\ q", "--out", "dot")
    assert out.startswith("digraph")


def test_file_input(capsys, tmp_path):
    src = tmp_path / "f.txt"
    src.write_text("[] p -> [][] p")
    code, out, _ = run(capsys, "decide", "--logic", "gl", f"@{src}")
    assert code == 0 and out.strip() == "provable"
    js_file = tmp_path / "f.json"
    js_file.write_text('{"root": 0, "nodes": [{"label": "box", "succ": [0]}]}')
    code, out, _ = run(capsys, "decide", f"@{js_file}")
    assert code == 0


def test_errors_exit_2(capsys):
    code, _, err = run(capsys, "parse", "--in", "p /\\")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "fix", "p", "p")
    assert code == 2
    code, _, _ = run(capsys, "parse", "--in", "@/nonexistent/file")
    assert code == 2
    code, _, _ = run(capsys, "decide", "--logic", "gl", "fix p. [] p")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["no-such-command"])


def test_min_bisim_cycles(capsys):
    code, out, _ = run(capsys, "min", "[] p /\\ [] p")
    assert code == 0 and out.strip() == "[] p /\\ [] p"
    code, out, _ = run(capsys, "bisim", "fix p. [] p", "fix p. [][] p")
    assert code == 0 and out.strip() == "bisimilar"
    code, out, _ = run(capsys, "bisim", "[] p", "[] q")
    assert code == 1 and out.strip() == "not bisimilar"
    code, out, _ = run(capsys, "cycles", "fix p. [] p")
    assert out.splitlines()[0] == "1 simple cycle(s)"


def test_snip_fix_js(capsys):
    code, out, _ = run(capsys, "snip", "fix p. [] p", "q")
    assert out.strip() == "[] q"
    code, out, _ = run(capsys, "fix", "p", "[] p")
    assert out.strip() == "fix x0. [] x0"
    code, out, _ = run(capsys, "js", "fix p. ([] p -> q)")
    assert out.strip() == "[] (true -> q) -> q"
    code, out, _ = run(capsys, "js", "--simplify", "fix p. ([] p -> q)")
    assert out.strip() == "[] q -> q"
    code, out, _ = run(capsys, "explicit-fp", "p", "~[] p")
    assert out.strip() == "~[] ~true"


def test_solve(capsys, tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("a = [] b;\nb = p /\\ [] a\n")
    code, out, _ = run(capsys, "solve", "--letrec", str(f))
    assert code == 0
    assert [line.split(" = ")[0] for line in out.splitlines()] == ["a", "b"]
    f.write_text("a = ~b; b = ~a")
    code, _, _ = run(capsys, "solve", "--letrec", str(f))
    assert code == 2


def test_decide_and_countermodel(capsys):
    code, out, _ = run(capsys, "decide", "fix p. ~[] p")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "not provable"
    assert {"worlds", "rel", "val", "world"} <= set(json.loads(lines[1]))
    code, out, _ = run(capsys, "countermodel", "p -> [] p", "--max-worlds", "2")
    assert code == 1
    assert json.loads(out) == {"worlds": 2, "rel": [[0, 1]], "val": {"p": [0]}, "world": 0}
    code, out, _ = run(capsys, "countermodel", "fix p. [] p", "--max-worlds", "3")
    assert code == 0 and "no countermodel" in out


def test_eval(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"worlds": 2, "rel": [[0, 1]], "val": {"p": [1]}}))
    code, out, _ = run(capsys, "eval", "--model", str(m), "fix p. ~[] p")
    assert code == 1
    assert out.splitlines() == ["world 0: true", "world 1: false"]
    code, out, _ = run(capsys, "eval", "--model", str(m), "--world", "0", "[] p")
    assert code == 0 and out.strip() == "world 0: true"
    m.write_text(json.dumps({"worlds": 1, "rel": [[0, 0]], "val": {}}))
    code, _, _ = run(capsys, "eval", "--model", str(m), "p")
    assert code == 2


def test_wfl_reduce(capsys):
    code, out, _ = run(capsys, "wfl-reduce", "fix p. [] p")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    assert lines[0].startswith("hyp: ") and lines[1] == "goal: _0"


def test_check_proof(capsys, tmp_path):
    code, out, _ = run(capsys, "check-proof", "henkin")
    assert code == 0 and out.strip() == "accepted"
    code, out, _ = run(capsys, "check-proof", "henkin", "--base", "kcircminus")
    assert code == 1 and out.startswith("rejected at line 4")
    f = tmp_path / "s.prf"
    f.write_text("1. true ; taut true\n2. [] false ; nec(1)\n")
    code, out, _ = run(capsys, "check-proof", str(f))
    assert code == 1 and "line 2" in out
    f.write_text("1. true ; nonsense\n")
    code, _, _ = run(capsys, "check-proof", str(f))
    assert code == 2
    code, _, _ = run(capsys, "check-proof", "no-such-script")
    assert code == 2
