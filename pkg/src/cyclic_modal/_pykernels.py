"""Pure-Python/numpy versions of the hot kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors them
line for line and must produce identical output.
"""
from __future__ import annotations

import numpy as np

# opcodes shared with _ckernels.pyx and kripke.compile_plan
OP_TOP, OP_BOT, OP_VAR, OP_NOT, OP_BOX, OP_AND, OP_OR, OP_IMP = range(8)

ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)


def refine_partition(init, offsets, targets):
    """Moore-style partition refinement.

    ``init`` assigns an initial block to every vertex; successors of vertex
    ``v`` are ``targets[offsets[v]:offsets[v + 1]]`` in order. Returns the
    coarsest stable refinement as an int64 array of block ids, numbered by
    first occurrence.
    """
    n = len(init)
    blocks = [int(b) for b in init]
    succ = [
        [int(t) for t in targets[offsets[v]:offsets[v + 1]]] for v in range(n)
    ]
    count = len(set(blocks))
    while True:
        sig: dict = {}
        new = []
        for v in range(n):
            key = (blocks[v], tuple(blocks[t] for t in succ[v]))
            new.append(sig.setdefault(key, len(sig)))
        blocks = new
        if len(sig) == count:
            return np.asarray(blocks, dtype=np.int64)
        count = len(sig)


def eval_plan(ops, arg0, arg1, order, world_order, woff, wsucc, lits):
    """Evaluate a compiled formula on one frame, bit-parallel over valuations.

    ``lits[i, w]`` is the bit-vector (``K`` uint64 words) saying in which
    valuation codes variable ``i`` holds at world ``w``. Worlds are visited
    in ``world_order``, which must list every world after all its
    successors. Returns ``values[v, w, :]``.
    """
    nv = len(ops)
    nw = len(world_order)
    nk = lits.shape[2]
    values = np.zeros((nv, nw, nk), dtype=np.uint64)
    for w in world_order:
        w = int(w)
        succs = [int(u) for u in wsucc[woff[w]:woff[w + 1]]]
        for v in order:
            v = int(v)
            op = ops[v]
            if op == OP_TOP:
                values[v, w] = ALL_ONES
            elif op == OP_BOT:
                pass
            elif op == OP_VAR:
                values[v, w] = lits[arg0[v], w]
            elif op == OP_NOT:
                values[v, w] = ~values[arg0[v], w]
            elif op == OP_BOX:
                acc = np.full(nk, ALL_ONES, dtype=np.uint64)
                for u in succs:
                    acc &= values[arg0[v], u]
                values[v, w] = acc
            elif op == OP_AND:
                values[v, w] = values[arg0[v], w] & values[arg1[v], w]
            elif op == OP_OR:
                values[v, w] = values[arg0[v], w] | values[arg1[v], w]
            elif op == OP_IMP:
                values[v, w] = ~values[arg0[v], w] | values[arg1[v], w]
            else:
                raise ValueError(f"bad opcode {op}")
    return values
