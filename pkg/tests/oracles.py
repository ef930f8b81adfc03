"""Slow, obviously-correct reference implementations used to check the library."""
from __future__ import annotations

import dataclasses
import random

from cyclic_modal.formula import AND, BOT, BOX, IMP, NOT, OR, TOP, Formula, fresh_var, neg, substitute, var
from cyclic_modal.graph import build


def naive_bisimulation(g, h) -> set:
    """Greatest fixpoint by deleting bad pairs until nothing changes."""
    rel = {
        (a, b)
        for a in range(len(g))
        for b in range(len(h))
        if g.labels[a] == h.labels[b] and len(g.succ[a]) == len(h.succ[b])
    }
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            if any((x, y) not in rel for x, y in zip(g.succ[a], h.succ[b])):
                rel.discard((a, b))
                changed = True
    return rel


def naive_bisimilar(g, h) -> bool:
    return (g.root, h.root) in naive_bisimulation(g, h)


def naive_eval(model, f: Formula) -> dict:
    """Truth value for every (world, vertex), by memoized recursion.

    Within one world the recursion only passes non-box vertices, which are
    acyclic; a box moves to strictly later worlds.
    """
    memo: dict = {}
    succ_w = {w: [b for a, b in model.rel if a == w] for w in range(model.world_count)}

    def val(w, a):
        if (w, a) in memo:
            return memo[w, a]
        lab = f.labels[a]
        ks = f.succ[a]
        if lab == TOP:
            r = True
        elif lab == BOT:
            r = False
        elif lab == NOT:
            r = not val(w, ks[0])
        elif lab == AND:
            r = val(w, ks[0]) and val(w, ks[1])
        elif lab == OR:
            r = val(w, ks[0]) or val(w, ks[1])
        elif lab == IMP:
            r = (not val(w, ks[0])) or val(w, ks[1])
        elif lab == BOX:
            r = all(val(u, ks[0]) for u in succ_w[w])
        else:
            r = w in model.valuation.get(lab, ())
        memo[w, a] = r
        return r

    return {(w, a): val(w, a) for w in range(model.world_count) for a in range(len(f))}


def duplicate(f: Formula, rng: random.Random, times: int = 2) -> Formula:
    """A bisimilar variant: copy vertices and move some incoming edges to the copies."""
    labels = list(f.labels)
    succ = [list(ss) for ss in f.succ]
    root = f.root
    for _ in range(times):
        a = rng.randrange(len(labels))
        c = len(labels)
        labels.append(labels[a])
        succ.append(list(succ[a]))
        for v in range(len(labels)):
            for i, b in enumerate(succ[v]):
                if b == a and rng.random() < 0.5:
                    succ[v][i] = c
        if root == a and rng.random() < 0.5:
            root = c
    return build(Formula, labels, succ, root)


def subst_term(t: tuple, sigma: dict) -> tuple:
    if len(t) == 1 and t[0] in sigma:
        return sigma[t[0]]
    return (t[0], *(subst_term(c, sigma) for c in t[1:]))


def mutations(script, rng: random.Random):
    """Single-line edits of a proof script: ``(kind, index, new_line)``.

    Each edit negates a line, renames one of its variables to a fresh one,
    or points a reference at the line itself or later.
    """
    for k, line in enumerate(script.lines):
        yield "negate", k, dataclasses.replace(line, formula=neg(line.formula))
        vs = sorted(line.formula.variables)
        if vs:
            p = vs[rng.randrange(len(vs))]
            z = fresh_var(line.formula)
            yield "rename", k, dataclasses.replace(line, formula=substitute(line.formula, {p: var(z)}))
        j = line.justification
        if j.refs:
            refs = list(j.refs)
            refs[rng.randrange(len(refs))] = line.number + rng.randint(0, 2)
            new_j = dataclasses.replace(j, refs=tuple(refs))
            yield "forward", k, dataclasses.replace(line, justification=new_j)
