"""Pointed labeled graphs with ordered successors.

Vertices are dense integers ``0 .. n-1``. A graph is immutable; every
operation here returns a new graph. Bisimulation is computed by partition
refinement on the disjoint union of the graphs involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

import networkx as nx
import numpy as np

from . import kernels


class StructuralError(ValueError):
    """A graph violates the shape invariants (indices, arity, reachability)."""


class GuardViolation(ValueError):
    """A vertex set claimed to be a guard misses some cycle."""


G = TypeVar("G", bound="LabeledGraph")


@dataclass(frozen=True)
class LabeledGraph:
    labels: tuple
    succ: tuple
    root: int = 0

    def __post_init__(self):
        n = len(self.labels)
        if len(self.succ) != n:
            raise StructuralError("labels and successor lists differ in length")
        if not 0 <= self.root < n:
            raise StructuralError(f"root {self.root} is not a vertex")
        for a, ss in enumerate(self.succ):
            want = self.arity(self.labels[a])
            if want is not None and len(ss) != want:
                raise StructuralError(
                    f"vertex {a} labeled {self.labels[a]!r} has {len(ss)} successors, "
                    f"expected {want}"
                )
            for b in ss:
                if not 0 <= b < n:
                    raise StructuralError(f"vertex {a} points to non-vertex {b}")
        if len(_preorder(self.succ, self.root)) != n:
            raise StructuralError("some vertex is unreachable from the root")

    @staticmethod
    def arity(label) -> int | None:
        """Arity of a label, or None if the alphabet is unconstrained."""
        return None

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def edges(self):
        for a, ss in enumerate(self.succ):
            for b in ss:
                yield a, b


@dataclass(frozen=True)
class Bisimulation:
    pairs: frozenset

    def __contains__(self, pair):
        return pair in self.pairs


def _preorder(succ, start):
    seen = set()
    out = []
    stack = [start]
    while stack:
        a = stack.pop()
        if a in seen:
            continue
        seen.add(a)
        out.append(a)
        for b in reversed(succ[a]):
            if b not in seen:
                stack.append(b)
    return out


def build(cls: type[G], labels: Sequence, succ: Sequence[Sequence[int]], root: int) -> G:
    """Restrict raw ``labels``/``succ`` lists to what ``root`` reaches, in canonical numbering.

    The raw lists may contain unreachable or multi-rooted material; that is
    how unions, quotients and the equation solver hand over their results.
    """
    order = _preorder(succ, root)
    index = {a: i for i, a in enumerate(order)}
    return cls(
        tuple(labels[a] for a in order),
        tuple(tuple(index[b] for b in succ[a]) for a in order),
        0,
    )


def canon(g: G) -> G:
    """Renumber vertices in depth-first preorder from the root."""
    return build(type(g), g.labels, g.succ, g.root)


def subgraph_at(g: G, a: int) -> G:
    if not 0 <= a < len(g):
        raise StructuralError(f"{a} is not a vertex")
    return build(type(g), g.labels, g.succ, a)


def isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    return canon(g) == canon(h)


def _union_blocks(graphs: Sequence[LabeledGraph]) -> tuple[np.ndarray, list[int]]:
    """Coarsest stable partition of the disjoint union; returns blocks and offsets."""
    label_ids: dict = {}
    init = []
    offsets = [0]
    targets = []
    starts = []
    base = 0
    for g in graphs:
        starts.append(base)
        for a in range(len(g)):
            init.append(label_ids.setdefault(g.labels[a], len(label_ids)))
            targets.extend(base + b for b in g.succ[a])
            offsets.append(len(targets))
        base += len(g)
    blocks = kernels.refine_partition(
        np.asarray(init, dtype=np.int64),
        np.asarray(offsets, dtype=np.int64),
        np.asarray(targets, dtype=np.int64),
    )
    return blocks, starts


def max_bisimulation(g: LabeledGraph, h: LabeledGraph) -> Bisimulation:
    blocks, (_, off) = _union_blocks([g, h])
    by_block: dict = {}
    for b in range(len(h)):
        by_block.setdefault(int(blocks[off + b]), []).append(b)
    pairs = frozenset(
        (a, b) for a in range(len(g)) for b in by_block.get(int(blocks[a]), ())
    )
    return Bisimulation(pairs)


def bisimilar(g: LabeledGraph, h: LabeledGraph) -> bool:
    blocks, (_, off) = _union_blocks([g, h])
    return blocks[g.root] == blocks[off + h.root]


def is_bisimulation(g: LabeledGraph, h: LabeledGraph, pairs: Iterable[tuple[int, int]]) -> bool:
    rel = set(pairs)
    for a, b in rel:
        if g.labels[a] != h.labels[b] or len(g.succ[a]) != len(h.succ[b]):
            return False
        if any((x, y) not in rel for x, y in zip(g.succ[a], h.succ[b])):
            return False
    return True


def minimize(g: G) -> G:
    """Quotient by the maximal auto-bisimulation, canonically numbered."""
    (blocks, _) = _union_blocks([g])
    nb = int(blocks.max()) + 1
    labels = [None] * nb
    succ: list = [None] * nb
    for a in range(len(g)):
        b = int(blocks[a])
        if labels[b] is None:
            labels[b] = g.labels[a]
            succ[b] = [int(blocks[x]) for x in g.succ[a]]
    return build(type(g), labels, succ, int(blocks[g.root]))


def _digraph(g: LabeledGraph, drop=()) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from(a for a in range(len(g)) if a not in drop)
    d.add_edges_from(
        (a, b) for a, b in g.edges() if a not in drop and b not in drop
    )
    return d


def simple_cycles(g: LabeledGraph) -> list[tuple]:
    """Elementary circuits of the successor relation, each rotated to start at its least vertex."""
    out = []
    for c in nx.simple_cycles(_digraph(g)):
        i = c.index(min(c))
        out.append(tuple(c[i:] + c[:i]))
    return sorted(out)


def simple_cycle_count(g: LabeledGraph) -> int:
    """Number of elementary circuits, by DFS from each vertex through larger vertices only."""
    succ = [sorted(set(ss)) for ss in g.succ]
    count = 0
    for s in range(len(succ)):
        on_path = {s}
        stack = [(s, iter(succ[s]))]
        while stack:
            a, it = stack[-1]
            for b in it:
                if b == s:
                    count += 1
                elif b > s and b not in on_path:
                    on_path.add(b)
                    stack.append((b, iter(succ[b])))
                    break
            else:
                stack.pop()
                on_path.discard(a)
    return count


def cycle_vertices(g: LabeledGraph) -> frozenset:
    """Vertices lying on some cycle (members of a non-trivial SCC or self-looped)."""
    d = _digraph(g)
    out = set()
    for comp in nx.strongly_connected_components(d):
        if len(comp) > 1:
            out |= comp
        else:
            (a,) = comp
            if d.has_edge(a, a):
                out.add(a)
    return frozenset(out)


def on_cycle(g: LabeledGraph, a: int) -> bool:
    """True iff ``a`` can reach itself by a non-empty path."""
    seen = set()
    stack = list(g.succ[a])
    while stack:
        b = stack.pop()
        if b == a:
            return True
        if b in seen:
            continue
        seen.add(b)
        stack.extend(g.succ[b])
    return False


def is_guard(g: LabeledGraph, guard: Iterable[int]) -> bool:
    """True iff deleting ``guard`` leaves the successor relation acyclic."""
    return acyclic_without(g.succ, frozenset(guard))


def acyclic_without(succ: Sequence[Sequence[int]], drop: frozenset) -> bool:
    # 0 = new, 1 = on the DFS stack, 2 = finished
    color = [0] * len(succ)
    for start in range(len(succ)):
        if color[start] or start in drop:
            continue
        color[start] = 1
        stack = [(start, iter(succ[start]))]
        while stack:
            a, it = stack[-1]
            for b in it:
                if b in drop:
                    continue
                if color[b] == 1:
                    return False
                if color[b] == 0:
                    color[b] = 1
                    stack.append((b, iter(succ[b])))
                    break
            else:
                color[a] = 2
                stack.pop()
    return True


def guard_fold(
    g: LabeledGraph,
    guard: Iterable[int],
    base: Callable[[int], object] | dict,
    step: Callable[[Hashable, list], object],
) -> dict[int, object]:
    """Guard recursion: guard vertices are leaves valued by ``base``.

    Every other vertex ``a`` gets ``step(label(a), [H(b) for b in succ(a)])``.
    Raises ``GuardViolation`` if a non-guard vertex is re-entered while in
    progress, which happens exactly when ``guard`` misses a cycle.
    """
    guard = frozenset(guard)
    get_base = base.__getitem__ if isinstance(base, dict) else base
    out: dict[int, object] = {}
    active: set[int] = set()
    for start in range(len(g)):
        if start in out:
            continue
        stack = [(start, False)]
        while stack:
            a, expanded = stack.pop()
            if a in out:
                continue
            if a in guard:
                out[a] = get_base(a)
                continue
            if expanded:
                active.discard(a)
                out[a] = step(g.labels[a], [out[b] for b in g.succ[a]])
                continue
            if a in active:
                raise GuardViolation(f"vertex {a} lies on an unguarded cycle")
            active.add(a)
            stack.append((a, True))
            for b in reversed(g.succ[a]):
                if b not in out:
                    if b in active and b not in guard:
                        raise GuardViolation(f"vertex {b} lies on an unguarded cycle")
                    stack.append((b, False))
    return out


def leaves_first(g: LabeledGraph, guard: Iterable[int]) -> list[int]:
    """All vertices, each non-guard vertex after its successors; guard vertices act as leaves."""
    return _postorder(g, frozenset(guard))


def _postorder(g, guard):
    out = []
    done = set()
    for start in range(len(g)):
        if start in done:
            continue
        stack = [(start, False)]
        while stack:
            a, expanded = stack.pop()
            if a in done:
                continue
            if expanded or a in guard:
                done.add(a)
                out.append(a)
                continue
            stack.append((a, True))
            for b in reversed(g.succ[a]):
                if b not in done:
                    stack.append((b, False))
    return out
