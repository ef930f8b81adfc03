# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in _pykernels."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.uint64_t u64

cdef enum:
    OP_TOP = 0
    OP_BOT = 1
    OP_VAR = 2
    OP_NOT = 3
    OP_BOX = 4
    OP_AND = 5
    OP_OR = 6
    OP_IMP = 7


def refine_partition(init, offsets, targets):
    cdef i64[:] blk = np.ascontiguousarray(init, dtype=np.int64).copy()
    cdef i64[:] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef i64[:] tgt = np.ascontiguousarray(targets, dtype=np.int64)
    cdef Py_ssize_t n = blk.shape[0]
    cdef i64[:] new = np.empty(n, dtype=np.int64)
    # per old block: head of the chain of new blocks split from it
    cdef i64[:] head = np.empty(n + 1, dtype=np.int64)
    cdef i64[:] nxt = np.empty(n + 1, dtype=np.int64)
    cdef i64[:] rep = np.empty(n + 1, dtype=np.int64)
    cdef Py_ssize_t v, u, j, lv, count, newcount, nb
    cdef i64 b
    cdef bint same

    if n == 0:
        return np.asarray(blk)
    # renumber the initial partition densely
    mapping = {}
    for v in range(n):
        blk[v] = mapping.setdefault(blk[v], len(mapping))
    count = len(mapping)

    while True:
        for v in range(count):
            head[v] = -1
        newcount = 0
        for v in range(n):
            b = blk[v]
            lv = off[v + 1] - off[v]
            nb = head[b]
            while nb != -1:
                u = rep[nb]
                same = (off[u + 1] - off[u]) == lv
                if same:
                    for j in range(lv):
                        if blk[tgt[off[v] + j]] != blk[tgt[off[u] + j]]:
                            same = False
                            break
                if same:
                    break
                nb = nxt[nb]
            if nb == -1:
                nb = newcount
                newcount += 1
                rep[nb] = v
                nxt[nb] = head[b]
                head[b] = nb
            new[v] = nb
        # number blocks by first occurrence so both backends agree
        order = {}
        for v in range(n):
            blk[v] = order.setdefault(new[v], len(order))
        if newcount == count:
            return np.asarray(blk).copy()
        count = newcount


def eval_plan(ops, arg0, arg1, order, world_order, woff, wsucc, lits):
    cdef cnp.int8_t[:] op = np.ascontiguousarray(ops, dtype=np.int8)
    cdef i64[:] a0 = np.ascontiguousarray(arg0, dtype=np.int64)
    cdef i64[:] a1 = np.ascontiguousarray(arg1, dtype=np.int64)
    cdef i64[:] ordr = np.ascontiguousarray(order, dtype=np.int64)
    cdef i64[:] word = np.ascontiguousarray(world_order, dtype=np.int64)
    cdef i64[:] wo = np.ascontiguousarray(woff, dtype=np.int64)
    cdef i64[:] ws = np.ascontiguousarray(wsucc, dtype=np.int64)
    cdef u64[:, :, :] lit = np.ascontiguousarray(lits, dtype=np.uint64)
    cdef Py_ssize_t nv = op.shape[0]
    cdef Py_ssize_t nw = word.shape[0]
    cdef Py_ssize_t nk = lit.shape[2]
    out = np.zeros((nv, nw, nk), dtype=np.uint64)
    cdef u64[:, :, :] val = out
    cdef Py_ssize_t wi, oi, w, v, k, e
    cdef u64 x
    cdef u64 ones = 0xFFFFFFFFFFFFFFFFULL
    for wi in range(nw):
        w = word[wi]
        for oi in range(ordr.shape[0]):
            v = ordr[oi]
            for k in range(nk):
                if op[v] == OP_TOP:
                    x = ones
                elif op[v] == OP_BOT:
                    x = 0
                elif op[v] == OP_VAR:
                    x = lit[a0[v], w, k]
                elif op[v] == OP_NOT:
                    x = ~val[a0[v], w, k]
                elif op[v] == OP_BOX:
                    x = ones
                    for e in range(wo[w], wo[w + 1]):
                        x &= val[a0[v], ws[e], k]
                elif op[v] == OP_AND:
                    x = val[a0[v], w, k] & val[a1[v], w, k]
                elif op[v] == OP_OR:
                    x = val[a0[v], w, k] | val[a1[v], w, k]
                elif op[v] == OP_IMP:
                    x = (~val[a0[v], w, k]) | val[a1[v], w, k]
                else:
                    raise ValueError("bad opcode")
                val[v, w, k] = x
    return out
