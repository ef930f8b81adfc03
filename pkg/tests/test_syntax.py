from __future__ import annotations

import json
import random

import pytest

from cyclic_modal.formula import ModalisationError, box, box_bullet, conj, disj, fix_point, imp, neg, var
from cyclic_modal.generate import random_graph
from cyclic_modal.graph import bisimilar, isomorphic
from cyclic_modal.syntax import (
    FormatError,
    ParseError,
    from_dict,
    from_json,
    parse,
    parse_prefix,
    parse_system,
    render,
    to_dict,
    to_dot,
    to_json,
)

H = fix_point("p", box(var("p")))
p, q, r = var("p"), var("q"), var("r")


def test_parse_examples():
    assert isomorphic(parse("fix p. [] p"), H)
    assert isomorphic(parse("letrec q = [] q in q"), H)
    with pytest.raises(ModalisationError):
        parse("fix p. p")
    with pytest.raises(ModalisationError):
        parse("letrec a = ~b; b = ~a in a")


def test_letrec_selects_unknown():
    f = parse("letrec a = [] b; b = p /\\ [] a in b")
    g = parse("fix b. p /\\ [][] b")
    assert bisimilar(f, g)


def test_precedence_and_associativity():
    assert isomorphic(parse("p -> q -> r"), imp(p, imp(q, r)))
    assert isomorphic(parse("p /\\ q /\\ r"), conj(conj(p, q), r))
    assert isomorphic(parse("p \\/ q /\\ r"), disj(p, conj(q, r)))
    assert isomorphic(parse("~p /\\ [] q -> r"), imp(conj(neg(p), box(q)), r))
    assert isomorphic(parse("<> p"), neg(box(neg(p))))
    assert isomorphic(parse("[*] p"), box_bullet(p))
    assert isomorphic(parse("fix x. [] x /\\ p"), fix_point("x", conj(box(var("x")), p)))


def test_parse_error_positions():
    for text, pos in [("p /\\", 4), ("(p", 2), ("p q", 2), ("fix . p", 4), ("p $ q", 2), ("", 0)]:
        with pytest.raises(ParseError) as e:
            parse(text)
        assert e.value.pos == pos, text


def test_internal_names_rejected():
    with pytest.raises(ParseError):
        parse("_0 /\\ p")


def test_parse_prefix_and_system():
    f, end = parse_prefix("p -> q ; rest", 0)
    assert isomorphic(f, imp(p, q)) and end == 7
    s = parse_system("a = [] b; b = [] a;")
    assert s.unknowns == ("a", "b")
    with pytest.raises(ParseError):
        parse_system("a = p; a = q")


def test_render_examples():
    assert render(H) == "fix x0. [] x0"
    assert render(parse("p -> q -> r")) == "p -> (q -> r)"
    assert render(parse("(p -> q) -> r")) == "(p -> q) -> r"
    assert render(parse("~[] p")) == "~[] p"
    # generated names avoid user variables
    assert render(fix_point("p", box(conj(p, var("x0"))))) == "fix x1. [] (x1 /\\ x0)"


def test_render_round_trip():
    rng = random.Random(71)
    for _ in range(300):
        f = random_graph(rng)
        assert bisimilar(parse(render(f)), f), render(f)


def test_json_round_trip():
    rng = random.Random(72)
    for _ in range(300):
        f = random_graph(rng)
        g = from_json(to_json(f))
        assert g == f
    assert to_dict(parse("p /\\ true")) == {
        "root": 0,
        "nodes": [
            {"label": "and", "succ": [1, 2]},
            {"label": "var:p", "succ": []},
            {"label": "top", "succ": []},
        ],
    }


def test_json_errors_have_paths():
    cases = [
        ("[]", "$"),
        ('{"root": "x", "nodes": []}', "$.root"),
        ('{"root": 0, "nodes": {}}', "$.nodes"),
        ('{"root": 0, "nodes": [{"label": "xor", "succ": []}]}', "$.nodes[0].label"),
        ('{"root": 0, "nodes": [{"label": "var:_0", "succ": []}]}', "$.nodes[0].label"),
        ('{"root": 0, "nodes": [{"label": "not", "succ": ["a"]}]}', "$.nodes[0].succ"),
    ]
    for text, path in cases:
        with pytest.raises(FormatError) as e:
            from_json(text)
        assert e.value.path == path, text
    with pytest.raises(FormatError):
        from_json("{not json")
    # structural violations: an unguarded cycle and a bad arity
    with pytest.raises(FormatError):
        from_dict({"root": 0, "nodes": [{"label": "not", "succ": [0]}]})
    with pytest.raises(FormatError):
        from_dict({"root": 0, "nodes": [{"label": "and", "succ": [0]}]})


def test_dot():
    out = to_dot(parse("p /\\ q"))
    assert out.count("->") == 2
    assert '[label="0"]' in out and '[label="1"]' in out
    assert out.count("shape=") == 3
    assert '"∧"' in out and "doublecircle" in out


def test_json_is_plain_data():
    d = json.loads(to_json(H))
    assert d == {"root": 0, "nodes": [{"label": "box", "succ": [0]}]}
