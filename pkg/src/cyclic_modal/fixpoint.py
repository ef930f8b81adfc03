"""Simultaneous guarded equation systems and their canonical solutions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import networkx as nx

from .formula import (
    Formula,
    ModalisationError,
    is_modalised,
    substitute,
    var,
)
from .graph import bisimilar, build


@dataclass(frozen=True)
class EquationSystem:
    unknowns: tuple
    bodies: Mapping[str, Formula] = field(hash=False)

    def __post_init__(self):
        if len(set(self.unknowns)) != len(self.unknowns):
            raise ValueError("unknowns must be pairwise distinct")
        if set(self.unknowns) != set(self.bodies):
            raise ValueError("every unknown needs exactly one body")

    @classmethod
    def of(cls, bodies: Mapping[str, Formula]) -> "EquationSystem":
        return cls(tuple(bodies), dict(bodies))

    def __len__(self):
        return len(self.unknowns)


@dataclass(frozen=True)
class MftPresentation:
    constants: frozenset
    defining_system: EquationSystem
    image: Formula


def dependency_graph(system: EquationSystem) -> dict[str, set]:
    """``q -> q'`` whenever the body of ``q`` is not modalised in ``q'``."""
    return {
        q: {r for r in system.unknowns if not is_modalised(system.bodies[q], r)}
        for q in system.unknowns
    }


def is_modalised_system(system: EquationSystem) -> bool:
    d = nx.DiGraph()
    d.add_nodes_from(system.unknowns)
    for q, outs in dependency_graph(system).items():
        d.add_edges_from((q, r) for r in outs)
    return nx.is_directed_acyclic_graph(d)


def solve(system: EquationSystem) -> dict[str, Formula]:
    """The canonical solution, built as one shared multi-rooted graph.

    Vertices are pairs (unknown, vertex of its body) whose label is not an
    unknown. An edge into an unknown ``q'`` is rerouted to the root of the
    body at the end of the chain of bodies that are bare unknowns starting
    from ``q'``.
    """
    if not is_modalised_system(system):
        raise ModalisationError("equation system is not modalised")
    Q = set(system.unknowns)
    bodies = system.bodies

    def end(q):
        # the bare-unknown chain is acyclic since the system is modalised
        while bodies[q].main in Q:
            q = bodies[q].main
        return q

    index: dict = {}
    labels: list = []
    for q in system.unknowns:
        for a, lab in enumerate(bodies[q].labels):
            if lab not in Q:
                index[q, a] = len(labels)
                labels.append(lab)

    def idfy(q, a):
        lab = bodies[q].labels[a]
        if lab in Q:
            e = end(lab)
            return index[e, bodies[e].root]
        return index[q, a]

    succ: list = [None] * len(labels)
    for (q, a), i in index.items():
        succ[i] = tuple(idfy(q, b) for b in bodies[q].succ[a])
    roots = {q: idfy(q, bodies[q].root) for q in system.unknowns}
    return {q: build(Formula, labels, succ, r) for q, r in roots.items()}


def verify_solution(system: EquationSystem, solution: Mapping[str, Formula]) -> bool:
    if set(solution) != set(system.unknowns):
        return False
    Q = set(system.unknowns)
    for q in system.unknowns:
        psi = solution[q]
        if psi.variables & Q:
            return False
        if not bisimilar(psi, substitute(system.bodies[q], solution)):
            return False
    return True


def cyco(f: Formula) -> MftPresentation:
    """Present a cyclic formula as an acyclic image over solved constants."""
    from .formula import extract_equations

    goal, system = extract_equations(f)
    return MftPresentation(frozenset(system.unknowns), system, goal)


def cocy(m: MftPresentation) -> Formula:
    return substitute(m.image, solve(m.defining_system))


def rename_unknowns(system: EquationSystem, names: Mapping[str, str]) -> EquationSystem:
    """Rename unknowns consistently in the declaration and in all bodies."""
    sub = {q: var(names[q]) for q in system.unknowns}
    return EquationSystem(
        tuple(names[q] for q in system.unknowns),
        {names[q]: substitute(system.bodies[q], sub) for q in system.unknowns},
    )
