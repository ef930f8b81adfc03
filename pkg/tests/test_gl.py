from __future__ import annotations

import random

import pytest

from cyclic_modal.formula import LanguageError, box, from_term, substitute, to_term, top, var
from cyclic_modal.generate import all_terms, random_acyclic
from cyclic_modal.gl import brute_force_validity, gl_decide, gl_equiv
from cyclic_modal.kripke import forces
from cyclic_modal.syntax import parse


def test_decide_examples():
    assert gl_decide(parse("[] p -> [][] p")).provable
    assert gl_decide(parse("[]([] q -> q) -> [] q")).provable
    v = gl_decide(parse("p -> [] p"))
    assert not v.provable
    m = v.witness
    assert m.is_transitive()
    assert not forces(m, v.world, parse("p -> [] p"))
    assert m.world_count == 2 and len(m.rel) == 1


def test_non_theorems():
    for text in ["[] p -> p", "[] false", "~[] false", "[][][][] false", "<> true"]:
        v = gl_decide(parse(text))
        assert not v.provable
        assert not forces(v.witness, v.world, parse(text))


def test_cyclic_input_rejected():
    with pytest.raises(LanguageError):
        gl_decide(parse("fix p. [] p"))


def test_equiv_examples():
    assert gl_equiv(parse("[] true"), top())
    assert not gl_equiv(var("p"), var("q"))
    assert gl_equiv(parse("~[]~true"), parse("~[] false"))


def test_brute_force_examples():
    assert brute_force_validity(top(), 3) is None
    assert brute_force_validity(parse("p -> [] p"), 2) is not None


def test_agreement_one_variable_small():
    for t in all_terms(["p"], 2):
        f = from_term(t)
        assert gl_decide(f).provable == (brute_force_validity(f, 3) is None), t


def test_agreement_random_two_variables():
    rng = random.Random(41)
    for _ in range(150):
        f = random_acyclic(rng, ["p", "q"], 5)
        v = gl_decide(f)
        if not v.provable:
            assert brute_force_validity(f, 4) is not None or v.witness.world_count > 4
        elif brute_force_validity(f, 4) is not None:
            pytest.fail(f"provable but refuted: {to_term(f)}")


def test_necessitation_closure():
    rng = random.Random(42)
    theorems = []
    while len(theorems) < 40:
        f = random_acyclic(rng, ["p"], 5)
        if gl_decide(f).provable:
            theorems.append(f)
    for f in theorems:
        assert gl_decide(box(f)).provable


def test_de_jongh_instances():
    rng = random.Random(43)
    for _ in range(60):
        phi = random_acyclic(rng, ["p", "q"], 4)
        bphi = box(phi)
        once = substitute(bphi, {"p": top()})
        twice = substitute(bphi, {"p": once})
        assert gl_equiv(once, twice)


def test_standard_axioms():
    for text in [
        "[](p -> q) -> ([] p -> [] q)",
        "[]([] p -> p) -> [] p",
        "[] p -> [][] p",
        "[](p /\\ q) <-> ([] p /\\ [] q)",
    ]:
        assert gl_decide(parse(text)).provable, text
