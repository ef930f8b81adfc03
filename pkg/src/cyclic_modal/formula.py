"""Cyclic modal formulas as guarded labeled graphs.

A formula is a ``LabeledGraph`` over the connectives below plus
propositional variables (any other string label, arity 0), subject to one
extra invariant: every cycle passes through a box vertex.

Formulas are never minimized implicitly. Operations that need fresh
variables draw them from the reserved ``_0, _1, ...`` namespace, which the
surface parser refuses, picking the lowest indices not already in use.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import (
    GuardViolation,
    LabeledGraph,
    StructuralError,
    acyclic_without,
    build,
    guard_fold,
    on_cycle,
    simple_cycles,
    subgraph_at,
)

TOP = "⊤"
BOT = "⊥"
NOT = "¬"
BOX = "□"
AND = "∧"
OR = "∨"
IMP = "→"

ARITY = {TOP: 0, BOT: 0, NOT: 1, BOX: 1, AND: 2, OR: 2, IMP: 2}
CONNECTIVES = frozenset(ARITY)
BINARY = (AND, OR, IMP)


class FormulaError(ValueError):
    pass


class ModalisationError(FormulaError):
    """A fixed point or equation system is not modalised."""


class LanguageError(FormulaError):
    """The formula is outside the language an operation accepts (e.g. cyclic)."""


class CompositionError(FormulaError):
    """Substitutions with overlapping domains were composed."""


class PreconditionError(FormulaError):
    pass


def is_var(label) -> bool:
    return label not in CONNECTIVES


@dataclass(frozen=True)
class Formula(LabeledGraph):
    def __post_init__(self):
        for lab in self.labels:
            if not isinstance(lab, str) or not lab:
                raise StructuralError(f"bad label {lab!r}")
        super().__post_init__()
        boxes = frozenset(a for a, lab in enumerate(self.labels) if lab == BOX)
        if not acyclic_without(self.succ, boxes):
            raise GuardViolation("formula has a cycle without a box")

    @staticmethod
    def arity(label) -> int:
        return ARITY.get(label, 0)

    @property
    def variables(self) -> frozenset:
        return frozenset(lab for lab in self.labels if is_var(lab))

    @property
    def main(self) -> str:
        return self.labels[self.root]

    def __str__(self):
        from .syntax import render

        return render(self)


Substitution = Mapping[str, Formula]


@dataclass(frozen=True)
class WflSequent:
    hypotheses: tuple
    goal: Formula

    def as_formula(self) -> Formula:
        """``(h_1 ∧ ... ∧ h_n) → goal``, or just the goal without hypotheses."""
        if not self.hypotheses:
            return self.goal
        return imp(conj_all(self.hypotheses), self.goal)


# -- constructors -----------------------------------------------------------


def mk(label: str, children: Iterable[Formula] = ()) -> Formula:
    """Fresh root labeled ``label`` over the disjoint sum of ``children``."""
    children = list(children)
    if len(children) != Formula.arity(label):
        raise StructuralError(
            f"{label!r} takes {Formula.arity(label)} arguments, got {len(children)}"
        )
    labels = [label]
    succ: list = [()]
    roots = []
    for ch in children:
        off = len(labels)
        roots.append(off + ch.root)
        labels.extend(ch.labels)
        succ.extend(tuple(off + b for b in ss) for ss in ch.succ)
    succ[0] = tuple(roots)
    return Formula(tuple(labels), tuple(succ), 0)


def var(name: str) -> Formula:
    if not is_var(name):
        raise StructuralError(f"{name!r} is a connective, not a variable")
    return mk(name)


def top() -> Formula:
    return mk(TOP)


def bot() -> Formula:
    return mk(BOT)


def neg(a: Formula) -> Formula:
    return mk(NOT, [a])


def box(a: Formula) -> Formula:
    return mk(BOX, [a])


def conj(a: Formula, b: Formula) -> Formula:
    return mk(AND, [a, b])


def disj(a: Formula, b: Formula) -> Formula:
    return mk(OR, [a, b])


def imp(a: Formula, b: Formula) -> Formula:
    return mk(IMP, [a, b])


def iff(a: Formula, b: Formula) -> Formula:
    return conj(imp(a, b), imp(b, a))


def conj_all(xs: Iterable[Formula]) -> Formula:
    xs = list(xs)
    if not xs:
        return top()
    out = xs[-1]
    for x in reversed(xs[:-1]):
        out = conj(x, out)
    return out


def split_iff(f: Formula) -> tuple[Formula, Formula] | None:
    """Recover ``(a, b)`` from a formula of the shape ``(a → b) ∧ (b' → a')``.

    Only the left conjunct's sides are returned; callers compare them with
    the right conjunct up to bisimilarity themselves.
    """
    if f.main != AND:
        return None
    left, right = f.succ[f.root]
    if f.labels[left] != IMP or f.labels[right] != IMP:
        return None
    a, b = f.succ[left]
    return subgraph_at(f, a), subgraph_at(f, b)


def fresh_vars(n: int, *avoid: Formula | Iterable[str]) -> list[str]:
    used: set = set()
    for x in avoid:
        used |= x.variables if isinstance(x, Formula) else set(x)
    out = []
    k = 0
    while len(out) < n:
        name = f"_{k}"
        if name not in used:
            out.append(name)
        k += 1
    return out


def fresh_var(*avoid) -> str:
    return fresh_vars(1, *avoid)[0]


# -- structural operations --------------------------------------------------


def is_modalised(f: Formula, p: str) -> bool:
    """Every root-to-``p`` path crosses a box."""
    seen = {f.root}
    stack = [f.root]
    while stack:
        a = stack.pop()
        if f.labels[a] == p:
            return False
        if f.labels[a] == BOX:
            continue
        for b in f.succ[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return True


def fix_point(p: str, f: Formula) -> Formula:
    """Merge every ``p``-vertex into the root."""
    if not is_modalised(f, p):
        raise ModalisationError(f"formula is not modalised in {p}")
    hits = {a for a, lab in enumerate(f.labels) if lab == p}
    succ = [tuple(f.root if b in hits else b for b in ss) for ss in f.succ]
    return build(Formula, f.labels, succ, f.root)


def substitute(f: Formula, sigma: Substitution) -> Formula:
    """Simultaneous substitution; each variable's vertices share one copy of its image."""
    used = {p: psi for p, psi in sigma.items() if p in f.variables}
    if not used:
        return f
    labels = list(f.labels)
    succ = [tuple(ss) for ss in f.succ]
    target = {}
    for p, psi in used.items():
        off = len(labels)
        target[p] = off + psi.root
        labels.extend(psi.labels)
        succ.extend(tuple(off + b for b in ss) for ss in psi.succ)
    n = len(f)
    redirect = {a: target[f.labels[a]] for a in range(n) if f.labels[a] in target}
    for a in range(n):
        succ[a] = tuple(redirect.get(b, b) for b in succ[a])
    return build(Formula, labels, succ, redirect.get(f.root, f.root))


def star_compose(sigma: Substitution, tau: Substitution) -> dict:
    overlap = set(sigma) & set(tau)
    if overlap:
        raise CompositionError(f"domains overlap on {sorted(overlap)}")
    out = dict(sigma)
    out.update(tau)
    return out


def snip(f: Formula, p: str) -> Formula:
    """Redirect all incoming edges of the root to a new ``p`` leaf."""
    if p in f.variables:
        raise PreconditionError(f"{p} occurs in the formula")
    if not on_cycle(f, f.root):
        return f
    n = len(f)
    labels = list(f.labels) + [p]
    succ = [tuple(n if b == f.root else b for b in ss) for ss in f.succ] + [()]
    return build(Formula, labels, succ, f.root)


def snip_subst(f: Formula, psi: Formula) -> Formula:
    p = fresh_var(f, psi)
    return substitute(snip(f, p), {p: psi})


def box_occurrences(f: Formula) -> frozenset:
    return frozenset(a for a, lab in enumerate(f.labels) if lab == BOX)


def cycle_box_occurrences(f: Formula) -> frozenset:
    return frozenset(a for a in box_occurrences(f) if on_cycle(f, a))


def box_bullet(f: Formula) -> Formula:
    p = fresh_var(f)
    return fix_point(p, box(conj(f, var(p))))


def dot_box_bullet(f: Formula) -> Formula:
    """``f ∧ box_bullet(f)``."""
    return conj(f, box_bullet(f))


def is_acyclic(f: Formula) -> bool:
    return acyclic_without(f.succ, frozenset())


def in_bullet_language(f: Formula) -> bool:
    """Structural test for the image of ``box_bullet``-built syntax.

    Every simple cycle must be a two-vertex box/conjunction gadget whose
    back edge is the second conjunct.
    """
    for cyc in simple_cycles(f):
        if len(cyc) != 2:
            return False
        b, c = sorted(cyc, key=lambda a: f.labels[a] != BOX)
        if f.labels[b] != BOX or f.labels[c] != AND:
            return False
        if f.succ[b] != (c,) or f.succ[c][1] != b or f.succ[c][0] == b:
            return False
    return True


# -- trees and terms --------------------------------------------------------
#
# A term is a nested tuple ``(label, *children)``; variables are ``(name,)``.
# Terms are how acyclic formulas are handled by the GL prover and the
# translation, since Python tuples hash-cons structurally for free.


def to_term(f: Formula, at: int | None = None) -> tuple:
    if not is_acyclic(f):
        raise LanguageError("formula is cyclic")
    vals = guard_fold(f, (), {}, lambda lab, xs: (lab, *xs))
    return vals[f.root if at is None else at]


def from_term(t: tuple) -> Formula:
    labels: list = []
    succ: list = []

    def walk(t):
        i = len(labels)
        labels.append(t[0])
        succ.append(None)
        succ[i] = tuple(walk(c) for c in t[1:])
        return i

    walk(t)
    return Formula(tuple(labels), tuple(succ), 0)


def to_tree(f: Formula) -> Formula:
    """The unique finite tree bisimilar to an acyclic formula."""
    return from_term(to_term(f))


def term_size(t: tuple) -> int:
    return 1 + sum(term_size(c) for c in t[1:])


def term_vars(t: tuple) -> set:
    if len(t) == 1 and is_var(t[0]):
        return {t[0]}
    out: set = set()
    for c in t[1:]:
        out |= term_vars(c)
    return out


# -- equation extraction ----------------------------------------------------


def extract_equations(f: Formula):
    """Name every box occurrence and unfold the formula to acyclic equations.

    Returns ``(goal, system)``: ``goal`` is the root's image and ``system``
    maps the name ``q_a`` of box ``a`` to ``□ E(child of a)``, where ``E``
    replaces boxes by their names.
    """
    from .fixpoint import EquationSystem

    boxes = sorted(box_occurrences(f))
    names = dict(zip(boxes, fresh_vars(len(boxes), f)))
    vals = guard_fold(f, boxes, lambda a: (names[a],), lambda lab, xs: (lab, *xs))
    bodies = {names[a]: from_term((BOX, vals[f.succ[a][0]])) for a in boxes}
    system = EquationSystem(tuple(names[a] for a in boxes), bodies)
    return from_term(vals[f.root]), system


def wfl_reduction(f: Formula) -> WflSequent:
    goal, system = extract_equations(f)
    hyps = tuple(
        dot_box_bullet(iff(var(q), system.bodies[q])) for q in system.unknowns
    )
    return WflSequent(hyps, goal)
