"""Random and exhaustive formula generation for tests and benchmarks."""
from __future__ import annotations

import random
from typing import Iterator, Sequence

from .fixpoint import EquationSystem, is_modalised_system
from .formula import (
    AND,
    ARITY,
    BOT,
    BOX,
    IMP,
    NOT,
    OR,
    TOP,
    Formula,
    box,
    from_term,
    is_modalised,
)
from .graph import build

UNARY = (NOT, BOX)
BINARY = (AND, OR, IMP)
CONNECTIVES = UNARY + BINARY


def random_graph(
    rng: random.Random,
    max_vertices: int = 12,
    variables: Sequence[str] = ("p", "q", "r"),
    box_weight: float = 2.0,
) -> Formula:
    """A random guarded formula graph with at most ``max_vertices`` vertices.

    Non-box vertices only point to higher indices or to boxes, so every
    cycle passes through a box.
    """
    n = rng.randint(1, max_vertices)
    leaves = list(variables) + [TOP, BOT]
    inner = [NOT, BOX, AND, OR, IMP]
    weights = [1.0, box_weight, 1.0, 1.0, 1.0]
    labels = []
    for a in range(n):
        if a == 0 or rng.random() < 0.6:
            labels.append(rng.choices(inner, weights)[0])
        else:
            labels.append(rng.choice(leaves))
    boxes = [a for a, lab in enumerate(labels) if lab == BOX]
    succ = []
    for a, lab in enumerate(labels):
        k = ARITY.get(lab, 0)
        cands = list(range(a + 1, n)) if lab != BOX else list(range(n))
        if lab != BOX:
            cands += [b for b in boxes if b <= a]
        if k and not cands:
            labels[a] = lab = rng.choice(leaves)
            k = 0
        succ.append(tuple(rng.choice(cands) for _ in range(k)))
    return build(Formula, labels, succ, 0)


def random_modalised(
    rng: random.Random,
    p: str = "p",
    max_vertices: int = 10,
    variables: Sequence[str] = ("q", "r"),
    tries: int = 50,
) -> Formula:
    """A random graph that mentions ``p`` and is modalised in it."""
    for _ in range(tries):
        f = random_graph(rng, max_vertices, (p, *variables))
        if p in f.variables and is_modalised(f, p):
            return f
    f = random_graph(rng, max(1, max_vertices - 1), (p, *variables))
    return box(f)


def random_system(
    rng: random.Random,
    max_unknowns: int = 3,
    max_vertices: int = 8,
    params: Sequence[str] = ("p",),
    tries: int = 200,
) -> EquationSystem:
    """A random modalised equation system over unknowns ``x0, x1, ...``."""
    k = rng.randint(1, max_unknowns)
    unknowns = [f"x{i}" for i in range(k)]
    for _ in range(tries):
        bodies = {
            q: random_graph(rng, max_vertices, (*unknowns, *params)) for q in unknowns
        }
        system = EquationSystem.of(bodies)
        if is_modalised_system(system):
            return system
    return EquationSystem.of({q: box(random_graph(rng, max_vertices - 1, (*unknowns, *params))) for q in unknowns})


# Size convention for terms: variables are free, every other label (the
# constants included) counts as one connective.


def random_term(rng: random.Random, variables: Sequence[str], connectives: int) -> tuple:
    """A random acyclic term with exactly ``connectives`` connectives."""
    if connectives == 0:
        return (rng.choice(list(variables)),)
    choices = list(CONNECTIVES) + ([TOP, BOT] if connectives == 1 else [])
    lab = rng.choice(choices)
    if lab in (TOP, BOT):
        return (lab,)
    if lab in UNARY:
        return (lab, random_term(rng, variables, connectives - 1))
    left = rng.randint(0, connectives - 1)
    return (
        lab,
        random_term(rng, variables, left),
        random_term(rng, variables, connectives - 1 - left),
    )


def random_acyclic(rng: random.Random, variables: Sequence[str], max_connectives: int) -> Formula:
    return from_term(random_term(rng, variables, rng.randint(0, max_connectives)))


def terms(
    variables: Sequence[str],
    connectives: int,
    guarded: Sequence[str] = (),
    _boxed: bool = False,
) -> Iterator[tuple]:
    """Every term with exactly ``connectives`` connectives.

    Variables in ``guarded`` may only occur under a box.
    """
    if connectives == 0:
        for v in variables:
            if _boxed or v not in guarded:
                yield (v,)
        return
    if connectives == 1:
        yield (TOP,)
        yield (BOT,)
    for t in terms(variables, connectives - 1, guarded, _boxed):
        yield (NOT, t)
    for t in terms(variables, connectives - 1, guarded, True):
        yield (BOX, t)
    for lab in BINARY:
        for left in range(connectives):
            rights = list(terms(variables, connectives - 1 - left, guarded, _boxed))
            for a in terms(variables, left, guarded, _boxed):
                for b in rights:
                    yield (lab, a, b)


def all_terms(variables: Sequence[str], max_connectives: int, guarded: Sequence[str] = ()) -> Iterator[tuple]:
    for k in range(max_connectives + 1):
        yield from terms(variables, k, guarded)
