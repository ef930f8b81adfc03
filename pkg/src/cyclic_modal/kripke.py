"""Finite acyclic Kripke models and formula evaluation.

Evaluation visits worlds successors-first; within a world, vertices are
visited leaves-first with box vertices treated as leaves (their value only
depends on strictly later worlds). The inner loop lives in ``kernels`` and
works bit-parallel: each (vertex, world) holds a bit-vector indexed by
valuation codes, so a whole frame is checked against every valuation at
once. Code ``c`` makes variable ``i`` true at world ``w`` iff bit
``i * n + w`` of ``c`` is set.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import networkx as nx
import numpy as np

from . import kernels
from .formula import AND, BOT, BOX, IMP, NOT, OR, TOP, Formula, box_occurrences
from .graph import guard_fold, leaves_first


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    world_count: int
    rel: frozenset = frozenset()
    valuation: Mapping[str, frozenset] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.world_count < 1:
            raise ModelError("a model needs at least one world")
        object.__setattr__(self, "rel", frozenset((int(a), int(b)) for a, b in self.rel))
        object.__setattr__(
            self,
            "valuation",
            {p: frozenset(int(w) for w in ws) for p, ws in self.valuation.items()},
        )
        for a, b in self.rel:
            if not (0 <= a < self.world_count and 0 <= b < self.world_count):
                raise ModelError(f"relation pair {(a, b)} mentions a non-world")
        for p, ws in self.valuation.items():
            if any(not 0 <= w < self.world_count for w in ws):
                raise ModelError(f"valuation of {p} mentions a non-world")
        d = nx.DiGraph()
        d.add_nodes_from(range(self.world_count))
        d.add_edges_from(self.rel)
        if not nx.is_directed_acyclic_graph(d):
            raise ModelError("accessibility relation has a cycle")

    def successors(self, w: int) -> list[int]:
        return sorted(b for a, b in self.rel if a == w)

    def holds(self, p: str, w: int) -> bool:
        return w in self.valuation.get(p, ())

    def is_transitive(self) -> bool:
        return all(
            (a, d) in self.rel for a, b in self.rel for c, d in self.rel if b == c
        )

    def to_dict(self) -> dict:
        return {
            "worlds": self.world_count,
            "rel": sorted([a, b] for a, b in self.rel),
            "val": {p: sorted(ws) for p, ws in sorted(self.valuation.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "KripkeModel":
        try:
            return cls(int(d["worlds"]), frozenset(map(tuple, d.get("rel", []))), dict(d.get("val", {})))
        except (KeyError, TypeError) as e:
            raise ModelError(f"malformed model: {e}") from None


@dataclass(frozen=True)
class EvalTable:
    formula: Formula
    model: KripkeModel
    table: np.ndarray = field(compare=False, hash=False)  # bool [world, vertex]

    def __getitem__(self, key):
        w, a = key
        return bool(self.table[w, a])

    @property
    def values(self) -> dict:
        return {
            (w, a): bool(self.table[w, a])
            for w in range(self.table.shape[0])
            for a in range(self.table.shape[1])
        }


# -- compilation ------------------------------------------------------------

_OPS = {
    TOP: kernels.OP_TOP,
    BOT: kernels.OP_BOT,
    NOT: kernels.OP_NOT,
    BOX: kernels.OP_BOX,
    AND: kernels.OP_AND,
    OR: kernels.OP_OR,
    IMP: kernels.OP_IMP,
}


@dataclass(frozen=True)
class Plan:
    ops: np.ndarray
    arg0: np.ndarray
    arg1: np.ndarray
    order: np.ndarray
    variables: tuple  # variable index -> name
    root: int


@functools.lru_cache(maxsize=4096)
def compile_plan(f: Formula, variables: tuple | None = None) -> Plan:
    variables = tuple(sorted(f.variables)) if variables is None else variables
    vidx = {p: i for i, p in enumerate(variables)}
    n = len(f)
    ops = np.zeros(n, dtype=np.int8)
    a0 = np.zeros(n, dtype=np.int64)
    a1 = np.zeros(n, dtype=np.int64)
    for a, lab in enumerate(f.labels):
        ss = f.succ[a]
        if lab in _OPS:
            ops[a] = _OPS[lab]
            if ss:
                a0[a] = ss[0]
            if len(ss) > 1:
                a1[a] = ss[1]
        else:
            if lab not in vidx:
                raise ModelError(f"variable {lab} missing from the plan")
            ops[a] = kernels.OP_VAR
            a0[a] = vidx[lab]
    order = np.asarray(leaves_first(f, box_occurrences(f)), dtype=np.int64)
    return Plan(ops, a0, a1, order, variables, f.root)


@dataclass(frozen=True)
class Frame:
    """Worlds ``0..n-1`` with an acyclic relation, ready for the kernel."""

    n: int
    rel: frozenset
    world_order: np.ndarray = field(compare=False, hash=False)
    woff: np.ndarray = field(compare=False, hash=False)
    wsucc: np.ndarray = field(compare=False, hash=False)

    @classmethod
    def of(cls, n: int, rel) -> "Frame":
        rel = frozenset(rel)
        succ = [sorted(b for a, b in rel if a == w) for w in range(n)]
        d = nx.DiGraph()
        d.add_nodes_from(range(n))
        d.add_edges_from(rel)
        try:
            topo = list(nx.lexicographical_topological_sort(d))
        except nx.NetworkXUnfeasible:
            raise ModelError("accessibility relation has a cycle") from None
        woff = np.zeros(n + 1, dtype=np.int64)
        for w in range(n):
            woff[w + 1] = woff[w] + len(succ[w])
        wsucc = np.asarray([b for s in succ for b in s], dtype=np.int64)
        return cls(n, rel, np.asarray(topo[::-1], dtype=np.int64), woff, wsucc)


_LOW_PATTERNS = [
    0xAAAAAAAAAAAAAAAA,
    0xCCCCCCCCCCCCCCCC,
    0xF0F0F0F0F0F0F0F0,
    0xFF00FF00FF00FF00,
    0xFFFF0000FFFF0000,
    0xFFFFFFFF00000000,
]

CHUNK_BITS = 16


def _literal_bits(nbits: int, high: int) -> tuple[np.ndarray, int]:
    """Bit-vectors over valuation codes for each code bit, for one chunk.

    Codes in the chunk share their bits above ``CHUNK_BITS`` (given by
    ``high``). Returns ``(bits[nbits, K], valid_count)``.
    """
    low = min(nbits, CHUNK_BITS)
    count = 1 << low
    nk = max(1, count // 64)
    out = np.zeros((nbits, nk), dtype=np.uint64)
    words = np.arange(nk, dtype=np.uint64)
    for k in range(nbits):
        if k < 6:
            out[k] = np.uint64(_LOW_PATTERNS[k])
        elif k < low:
            out[k] = np.where((words >> np.uint64(k - 6)) & np.uint64(1), ~np.uint64(0), np.uint64(0))
        elif (high >> (k - low)) & 1:
            out[k] = ~np.uint64(0)
    return out, count


def _valid_mask(count: int, nk: int) -> np.ndarray:
    valid = np.full(nk, ~np.uint64(0), dtype=np.uint64)
    if count < 64:
        valid[0] = np.uint64((1 << count) - 1)
    return valid


def scan_frame(plan: Plan, frame: Frame, free: int | None = None) -> tuple[int, int] | None:
    """First ``(code, world)`` at which the formula's root is false, over all valuations.

    Only the first ``free`` variables of the plan vary; the rest stay false.
    """
    nvars = len(plan.variables) if free is None else min(free, len(plan.variables))
    n = frame.n
    nbits = nvars * n
    low = min(nbits, CHUNK_BITS)
    for high in range(1 << (nbits - low)):
        bits, count = _literal_bits(nbits, high)
        nk = bits.shape[1]
        lits = np.zeros((len(plan.variables), n, nk), dtype=np.uint64)
        for i in range(nvars):
            lits[i] = bits[i * n:(i + 1) * n]
        vals = kernels.eval_plan(
            plan.ops, plan.arg0, plan.arg1, plan.order,
            frame.world_order, frame.woff, frame.wsucc, lits,
        )
        bad = ~vals[plan.root] & _valid_mask(count, nk)  # [world, K]
        anybad = np.bitwise_or.reduce(bad, axis=0)
        nz = np.flatnonzero(anybad)
        if nz.size == 0:
            continue
        j = int(nz[0])
        word = int(anybad[j])
        bit = (word & -word).bit_length() - 1
        code = (high << low) | (j * 64 + bit)
        world = min(w for w in range(n) if (int(bad[w, j]) >> bit) & 1)
        return code, world
    return None


def model_from_code(frame: Frame, variables: Sequence[str], code: int) -> KripkeModel:
    n = frame.n
    val = {
        p: frozenset(w for w in range(n) if (code >> (i * n + w)) & 1)
        for i, p in enumerate(variables)
    }
    return KripkeModel(n, frame.rel, val)


# -- evaluation -------------------------------------------------------------


def eval(model: KripkeModel, f: Formula) -> EvalTable:  # noqa: A001 - public name
    plan = compile_plan(f)
    frame = Frame.of(model.world_count, model.rel)
    n = model.world_count
    lits = np.zeros((len(plan.variables), n, 1), dtype=np.uint64)
    for i, p in enumerate(plan.variables):
        for w in model.valuation.get(p, ()):
            lits[i, w, 0] = ~np.uint64(0)
    vals = kernels.eval_plan(
        plan.ops, plan.arg0, plan.arg1, plan.order,
        frame.world_order, frame.woff, frame.wsucc, lits,
    )
    return EvalTable(f, model, (vals[:, :, 0] & np.uint64(1)).astype(bool).T.copy())


def eval_reference(model: KripkeModel, f: Formula) -> dict:
    """Straightforward evaluator: worlds successors-first, guard recursion inside."""
    frame = Frame.of(model.world_count, model.rel)
    boxes = box_occurrences(f)
    out: dict = {}
    ops = {
        TOP: lambda: True,
        BOT: lambda: False,
        NOT: lambda x: not x,
        AND: lambda x, y: x and y,
        OR: lambda x, y: x or y,
        IMP: lambda x, y: (not x) or y,
    }
    for w in frame.world_order:
        w = int(w)
        succ = model.successors(w)

        def base(a, w=w, succ=succ):
            child = f.succ[a][0]
            return all(out[u, child] for u in succ)

        def step(lab, xs, w=w):
            if lab in ops:
                return ops[lab](*xs)
            return model.holds(lab, w)

        for a, v in guard_fold(f, boxes, base, step).items():
            out[w, a] = v
    return out


def forces(model: KripkeModel, w: int, f: Formula) -> bool:
    if not 0 <= w < model.world_count:
        raise ModelError(f"{w} is not a world")
    return eval(model, f)[w, f.root]


def valid_in(model: KripkeModel, f: Formula) -> bool:
    return bool(eval(model, f).table[:, f.root].all())


# -- enumeration ------------------------------------------------------------


def _forward_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def enumerate_frames(n: int, transitive: bool = False) -> Iterator[Frame]:
    """Relations with edges only ``i -> j`` for ``i < j``; every acyclic relation is isomorphic to one."""
    pairs = _forward_pairs(n)
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for k, p in enumerate(pairs) if (mask >> k) & 1)
        if transitive and not all(
            (a, d) in rel for a, b in rel for c, d in rel if b == c
        ):
            continue
        yield Frame.of(n, rel)


def enumerate_models(n: int, variables: Sequence[str]) -> Iterator[KripkeModel]:
    if n < 1:
        raise ModelError("n must be at least 1")
    variables = list(variables)
    for frame in enumerate_frames(n):
        for code in range(1 << (len(variables) * n)):
            yield model_from_code(frame, variables, code)


def find_countermodel(
    f: Formula,
    max_worlds: int = 4,
    max_vars: int | None = None,
    transitive: bool = False,
) -> tuple[KripkeModel, int] | None:
    """First refuting (model, world) in enumeration order, or None.

    None only means that no countermodel exists up to the bound.
    """
    if max_worlds < 1:
        raise ModelError("max_worlds must be at least 1")
    plan = compile_plan(f)
    for n in range(1, max_worlds + 1):
        for frame in enumerate_frames(n, transitive=transitive):
            hit = scan_frame(plan, frame, max_vars)
            if hit is not None:
                code, w = hit
                return model_from_code(frame, plan.variables, code), w
    return None


def is_valid_upto(f: Formula, max_worlds: int = 4, transitive: bool = False) -> bool:
    return find_countermodel(f, max_worlds, transitive=transitive) is None


def all_models(max_worlds: int, variables: Sequence[str]) -> Iterator[KripkeModel]:
    return itertools.chain.from_iterable(
        enumerate_models(n, variables) for n in range(1, max_worlds + 1)
    )
