"""Translation of cyclic formulas into acyclic ones, and the induced GL° decision.

``js_star(φ, a)`` is homomorphic at vertices that are not boxes on a cycle.
At a box ``a`` on a cycle it restarts on the subgraph at ``a`` with the
root snipped and the snipped leaf replaced by ``⊤``; that graph has fewer
simple cycles, which bounds the recursion. Inside one graph the cycle
boxes form a guard, so the homomorphic part is a guard recursion.

Results are terms (nested tuples); the public functions wrap them as tree
formulas.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    AND,
    IMP,
    OR,
    TOP,
    Formula,
    cycle_box_occurrences,
    fix_point,
    from_term,
    snip_subst,
    to_term,
    top,
)
from .gl import GlVerdict, gl_decide, gl_decide_term
from .graph import canon, guard_fold, simple_cycle_count, subgraph_at


class CertificationError(AssertionError):
    """A defining equation of the translation failed to be GL-provable."""


@dataclass(frozen=True)
class LocalTranslation:
    source: Formula
    values: dict  # vertex -> tree Formula


class _Translator:
    def __init__(self):
        self.memo: dict = {}

    def table(self, f: Formula) -> dict:
        """Translation terms for every vertex of ``f``."""
        guard = cycle_box_occurrences(f)
        cycles = simple_cycle_count(f) if guard else 0

        def restart(a):
            g = snip_subst(subgraph_at(f, a), top())
            if simple_cycle_count(g) >= cycles:
                raise AssertionError("internal error: snipping did not remove a cycle")
            return self.at_root(g)

        return guard_fold(f, guard, restart, lambda lab, xs: (lab, *xs))

    def at_root(self, f: Formula) -> tuple:
        key = canon(f)
        if key not in self.memo:
            self.memo[key] = self.table(key)[key.root]
        return self.memo[key]


_shared = _Translator()


def js_star_term(f: Formula, a: int) -> tuple:
    if not 0 <= a < len(f):
        raise IndexError(f"{a} is not a vertex")
    return _shared.at_root(subgraph_at(f, a))


def js_term(f: Formula) -> tuple:
    return _shared.at_root(f)


def js_star(f: Formula, a: int) -> Formula:
    return from_term(js_star_term(f, a))


def js(f: Formula) -> Formula:
    return from_term(js_term(f))


def certify_local_translation(f: Formula) -> LocalTranslation:
    """Compute the translation at every vertex and check each defining equation in GL.

    Equations whose two sides are syntactically identical hold trivially
    and are not sent to the prover.
    """
    values = {a: js_star_term(f, a) for a in range(len(f))}
    for a, lab in enumerate(f.labels):
        expected = (lab, *(values[b] for b in f.succ[a]))
        got = values[a]
        if got == expected:
            continue
        goal = (AND, (IMP, got, expected), (IMP, expected, got))
        if not gl_decide_term(goal).provable:
            raise CertificationError(f"equation at vertex {a} ({lab}) is not GL-provable")
    return LocalTranslation(f, {a: from_term(t) for a, t in values.items()})


def explicit_fixed_point(p: str, f: Formula) -> Formula:
    return js(fix_point(p, f))


def glcirc_decide(f: Formula) -> GlVerdict:
    return gl_decide(js(f))


def simplify_top(t: tuple) -> tuple:
    """Absorb ``⊤`` in boolean positions; GL-equivalent to the input."""
    if len(t) == 1:
        return t
    kids = [simplify_top(c) for c in t[1:]]
    lab = t[0]
    T = (TOP,)
    if lab == AND:
        if kids[0] == T:
            return kids[1]
        if kids[1] == T:
            return kids[0]
    elif lab == OR:
        if T in kids:
            return T
    elif lab == IMP:
        if kids[0] == T:
            return kids[1]
        if kids[1] == T:
            return T
    return (lab, *kids)


def simplify(f: Formula) -> Formula:
    return from_term(simplify_top(to_term(f)))
