from __future__ import annotations

import dataclasses
import random

import pytest

from cyclic_modal.formula import FormulaError, bot, disj, iff, imp, neg, var
from cyclic_modal.generate import random_graph
from cyclic_modal.graph import bisimilar
from cyclic_modal.kripke import find_countermodel
from cyclic_modal.proof import (
    BASES,
    HENKIN,
    BaseError,
    Justification,
    ProofLine,
    ProofScript,
    ScriptError,
    bundled_scripts,
    check_proof,
    conclusion,
    instantiate_schema,
    is_tautology,
    parse_script,
)
from cyclic_modal.syntax import parse
from oracles import duplicate, mutations, naive_bisimilar

INTENDED = {
    "henkin": "chl",
    "bullet_l1": "chl",
    "bullet_l2": "chl",
    "bullet_l3": "chl",
    "bullet_l4": "chl",
    "chl0_nec_bullet": "chl0",
}

SMALL = """\
1. true ; taut true
2. [] true ; nec(1)
"""


def scripts():
    return {name: parse_script(text) for name, text in bundled_scripts().items()}


def test_bundle_is_complete():
    assert set(bundled_scripts()) == set(INTENDED)


def test_bundled_scripts_accepted_under_intended_base():
    for name, s in scripts().items():
        assert s.base == INTENDED[name]
        v = check_proof(s)
        assert v.accepted, f"{name}: {v}"


def test_bundled_scripts_rejected_under_weakest_base():
    for name, s in scripts().items():
        v = check_proof(s, "kcircminus")
        assert not v.accepted and v.base_error, name


def test_henkin_conclusion():
    s = scripts()["henkin"]
    assert bisimilar(conclusion(s), HENKIN)
    v = check_proof(s, "kcircminus")
    assert str(v).startswith("rejected at line 4")


def test_small_script_all_bases():
    s = parse_script(SMALL)
    for base in BASES:
        assert check_proof(s, base).accepted
    assert str(check_proof(s)) == "accepted"


def test_unknown_base():
    with pytest.raises(BaseError):
        check_proof(parse_script(SMALL), "s4")
    with pytest.raises(BaseError):
        parse_script("base s4\n" + SMALL)


def test_instantiate_schema_examples():
    a = var("A")
    assert bisimilar(instantiate_schema(imp(a, a), {"A": HENKIN}), imp(HENKIN, HENKIN))
    got = instantiate_schema(disj(a, neg(a)), {"A": bot()})
    assert bisimilar(got, parse("false \\/ ~false"))
    assert is_tautology(parse("A -> (B -> A)"))
    assert not is_tautology(parse("A -> B"))
    with pytest.raises(FormulaError):
        is_tautology(parse("[] A -> A"))


def test_taut_rejects_modal_schema():
    v = check_proof(parse_script("1. [] p -> [] p ; taut [] A -> [] A where A := p"))
    assert not v.accepted and "propositional" in v.reason


def test_bisim_ax_tracks_bisimilarity():
    rng = random.Random(61)
    pos = neg_ = 0
    for _ in range(120):
        f = random_graph(rng, 8, ("p", "q"))
        g = duplicate(f, rng) if rng.random() < 0.5 else random_graph(rng, 8, ("p", "q"))
        line = ProofLine(1, iff(f, g), Justification("bisim_ax", args=(f, g)))
        ok = check_proof(ProofScript("kcircminus", (line,))).accepted
        assert ok == naive_bisimilar(f, g)
        pos += ok
        neg_ += not ok
    assert pos > 20 and neg_ > 20


def test_base_monotonicity():
    texts = [
        SMALL,
        "1. [](p -> q) -> ([] p -> [] q) ; k_ax(p, q)\n",
        "1. [*] p <-> [](p /\\ [*] p) ; bisim_ax([*] p, [](p /\\ [*] p))\n",
    ]
    for text in texts:
        s = parse_script(text, "kcircminus")
        assert check_proof(s).accepted
        for base in BASES:
            assert check_proof(s, base).accepted


def test_rule_specific_rejections():
    bad = [
        "1. p ; taut A where A := p",
        "1. true ; taut true\n2. [] false ; nec(1)",
        "1. true ; taut true\n2. true ; mp(1, 1)",
        "1. true ; taut true\n2. [] true ; nec(2)",
        "1. [] p -> p ; bisim_ax([] p, p)",
        "1. [] p -> [] p ; four_ax(p)",
    ]
    for text in bad:
        v = check_proof(parse_script(text, "glcirc"))
        assert not v.accepted, text
        assert not v.base_error


def test_ipe_and_henkin_ax():
    text = """\
base kcirc
1. [] p <-> [] p ; taut A <-> A where A := [] p
2. (fix p. [] p) <-> (fix p. [] p) ; ipe(1, p)
"""
    assert check_proof(parse_script(text)).accepted
    # q does not occur, so fixing it changes nothing
    vacuous = text.replace("ipe(1, p)", "ipe(1, q)").replace("(fix p. [] p) <-> (fix p. [] p)", "[] p <-> [] p")
    assert check_proof(parse_script(vacuous)).accepted
    not_mod = "base kcirc\n1. p <-> p ; taut A <-> A where A := p\n2. p <-> p ; ipe(1, p)\n"
    assert not check_proof(parse_script(not_mod)).accepted
    assert check_proof(parse_script("base chl0\n1. fix p. [] p ; henkin_ax")).accepted


# -- mutations ------------------------------------------------------------


def test_mutations_rejected():
    rng = random.Random(62)
    count = 0
    for name, s in scripts().items():
        for kind, k, new in mutations(s, rng):
            lines = list(s.lines)
            lines[k] = new
            v = check_proof(dataclasses.replace(s, lines=tuple(lines)))
            assert not v.accepted, f"{name} {kind} line {k + 1}"
            assert v.line == k + 1
            count += 1
    assert count >= 50


# -- soundness and parsing -------------------------------------------------


def test_bundled_lines_valid_on_small_models():
    for name, s in scripts().items():
        for line in s.lines:
            assert find_countermodel(line.formula, 3) is None, f"{name} line {line.number}"


def test_script_syntax_errors():
    cases = [
        "2. true ; taut true",
        "1. true ; frobnicate(1)",
        "1. true ; taut true extra",
        "1. true taut true",
        "1. ( ; taut true",
        "let = p",
        "just words",
    ]
    for text in cases:
        with pytest.raises(ScriptError):
            parse_script(text)


def test_let_and_comments():
    text = """\
# comment
let h = fix p. [] p   # trailing comment
1. h -> h ; taut A -> A where A := h
"""
    s = parse_script(text)
    assert bisimilar(s.lines[0].formula, imp(HENKIN, HENKIN))
    assert check_proof(s).accepted
