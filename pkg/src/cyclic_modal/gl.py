"""Decision procedure for GL on acyclic formulas.

To refute ``φ`` we look for a world satisfying ``¬φ``. A world request is
a set of terms that must hold; a world is an assignment to the request's
atoms (variables and box terms not under another box) that makes every
requested term true. Each false ``□ψ`` needs a successor satisfying
``¬ψ`` and ``□ψ`` together with ``χ`` and ``□χ`` for every true ``□χ``.
The set of true boxes grows strictly along every branch, so the search
terminates. Requests are memoized and shared; the countermodel is the
transitive closure of the resulting successor graph.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

from .formula import AND, BOT, BOX, CONNECTIVES, IMP, NOT, OR, TOP, Formula, iff, to_term
from .kripke import KripkeModel, find_countermodel, forces


@dataclass(frozen=True)
class GlVerdict:
    provable: bool
    witness: KripkeModel | None = None
    world: int | None = None

    def __bool__(self):
        return self.provable


def _is_atom(t: tuple) -> bool:
    return t[0] == BOX or (len(t) == 1 and t[0] not in CONNECTIVES)


def _atoms(terms) -> set:
    out: set = set()
    stack = list(terms)
    while stack:
        t = stack.pop()
        if _is_atom(t):
            out.add(t)
        else:
            stack.extend(t[1:])
    return out


def _kleene(t: tuple, asg: dict):
    lab = t[0]
    if lab == TOP:
        return True
    if lab == BOT:
        return False
    if _is_atom(t):
        return asg.get(t)
    if lab == NOT:
        v = _kleene(t[1], asg)
        return None if v is None else not v
    a = _kleene(t[1], asg)
    if lab == IMP:
        a = None if a is None else not a
    elif lab != AND and lab != OR:
        raise ValueError(f"unknown connective {lab!r}")
    if lab == AND:
        if a is False:
            return False
        b = _kleene(t[2], asg)
        if b is False:
            return False
        return True if a and b else None
    if a is True:
        return True
    b = _kleene(t[2], asg)
    if b is True:
        return True
    return False if a is False and b is False else None


@functools.lru_cache(maxsize=1 << 16)
def _size(t):
    return 1 + sum(_size(c) for c in t[1:])


@dataclass(eq=False)
class _Node:
    assignment: dict
    children: tuple


class _Search:
    def __init__(self):
        self.memo: dict = {}

    def realize(self, request: frozenset) -> _Node | None:
        if request in self.memo:
            return self.memo[request]
        self.memo[request] = None
        atoms = sorted(_atoms(request), key=lambda t: (_size(t), repr(t)))
        result = None
        for asg in self._assignments(atoms, list(request), {}, 0):
            result = self._expand(atoms, asg)
            if result is not None:
                break
        self.memo[request] = result
        return result

    def _assignments(self, atoms, request, asg, i) -> Iterator[dict]:
        if any(_kleene(t, asg) is False for t in request):
            return
        if i == len(atoms):
            yield dict(asg)
            return
        for v in (False, True):
            asg[atoms[i]] = v
            yield from self._assignments(atoms, request, asg, i + 1)
        del asg[atoms[i]]

    def _expand(self, atoms, asg) -> _Node | None:
        carry = set()
        for a in atoms:
            if a[0] == BOX and asg[a]:
                carry.add(a)
                carry.add(a[1])
        children = []
        for a in atoms:
            if a[0] == BOX and not asg[a]:
                child = self.realize(frozenset(carry | {(NOT, a[1]), a}))
                if child is None:
                    return None
                children.append(child)
        return _Node(asg, tuple(children))


def _assemble(root: _Node) -> KripkeModel:
    index: dict = {}
    order = []
    stack = [root]
    while stack:
        n = stack.pop()
        if id(n) in index:
            continue
        index[id(n)] = len(order)
        order.append(n)
        stack.extend(reversed(n.children))
    succ = {index[id(n)]: {index[id(c)] for c in n.children} for n in order}
    # the node graph is acyclic, so plain memoized reachability terminates
    done: dict = {}

    def reach(w):
        if w in done:
            return done[w]
        out = set()
        for c in succ[w]:
            out.add(c)
            out |= reach(c)
        done[w] = out
        return out

    rel = {(w, u) for w in range(len(order)) for u in reach(w)}
    val: dict = {}
    for w, n in enumerate(order):
        for t, v in n.assignment.items():
            if v and len(t) == 1:
                val.setdefault(t[0], set()).add(w)
    return KripkeModel(len(order), frozenset(rel), val)


def gl_decide_term(t: tuple) -> GlVerdict:
    node = _Search().realize(frozenset({(NOT, t)}))
    if node is None:
        return GlVerdict(True)
    return GlVerdict(False, _assemble(node), 0)


def gl_decide(f: Formula) -> GlVerdict:
    """GL-provability of an acyclic formula, with a verified countermodel otherwise."""
    verdict = gl_decide_term(to_term(f))
    if not verdict.provable:
        m = verdict.witness
        if not m.is_transitive() or forces(m, verdict.world, f):
            raise AssertionError("internal error: GL countermodel does not refute the formula")
    return verdict


def gl_equiv(a: Formula, b: Formula) -> bool:
    return gl_decide(iff(a, b)).provable


def brute_force_validity(f: Formula, k: int) -> tuple[KripkeModel, int] | None:
    """Refuting (model, world) over transitive irreflexive frames with at most ``k`` worlds."""
    return find_countermodel(f, k, transitive=True)


def iff_term(a: tuple, b: tuple) -> tuple:
    return (AND, (IMP, a, b), (IMP, b, a))


def gl_equiv_terms(a: tuple, b: tuple) -> bool:
    return a == b or gl_decide_term(iff_term(a, b)).provable
