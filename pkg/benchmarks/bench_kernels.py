"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Both backends run on identical inputs and their outputs are checked for
equality before timing.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from cyclic_modal import _pykernels, kernels
from cyclic_modal.generate import random_graph
from cyclic_modal.kripke import _literal_bits, compile_plan, enumerate_frames, find_countermodel

try:
    from cyclic_modal import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def refinement_inputs(rng, count, size):
    cases = []
    for _ in range(count):
        g = random_graph(rng, size, ("p", "q", "r"))
        labels = {}
        init = np.asarray([labels.setdefault(lab, len(labels)) for lab in g.labels], dtype=np.int64)
        offsets = np.zeros(len(g) + 1, dtype=np.int64)
        for a, ss in enumerate(g.succ):
            offsets[a + 1] = offsets[a] + len(ss)
        targets = np.asarray([b for ss in g.succ for b in ss], dtype=np.int64)
        cases.append((init, offsets, targets))
    return cases


def eval_inputs(rng, count, worlds):
    frames = list(enumerate_frames(worlds))
    cases = []
    for _ in range(count):
        f = random_graph(rng, 14, ("p", "q"))
        plan = compile_plan(f, ("p", "q"))
        frame = rng.choice(frames)
        nbits = 2 * worlds
        bits, _ = _literal_bits(nbits, 0)
        lits = np.stack([bits[0:worlds], bits[worlds:2 * worlds]])
        cases.append((plan.ops, plan.arg0, plan.arg1, plan.order,
                      frame.world_order, frame.woff, frame.wsucc, lits))
    return cases


def timed(func, cases, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in cases:
            func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=300)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare")
        return 1
    rng = random.Random(args.seed)
    suites = [
        ("refine_partition (12 vertices)", "refine_partition", refinement_inputs(rng, args.cases, 12)),
        ("refine_partition (200 vertices)", "refine_partition", refinement_inputs(rng, args.cases // 10, 200)),
        ("eval_plan (4 worlds, 2 vars)", "eval_plan", eval_inputs(rng, args.cases, 4)),
        ("eval_plan (6 worlds, 2 vars)", "eval_plan", eval_inputs(rng, args.cases // 3, 6)),
    ]
    print(f"{'kernel':34} {'cases':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn, cases in suites:
        py, cy = getattr(_pykernels, fn), getattr(_ckernels, fn)
        for c in cases:
            if not np.array_equal(py(*c), cy(*c)):
                raise SystemExit(f"{name}: backends disagree")
        tp = timed(py, cases, args.repeat)
        tc = timed(cy, cases, args.repeat)
        print(f"{name:34} {len(cases):>6} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")

    # end to end: the countermodel search with each backend swapped in
    formulas = [(random_graph(rng, 10, ("p", "q")), 4) for _ in range(args.cases // 10)]
    timed(find_countermodel, formulas, 1)  # warm the plan cache
    times = {}
    saved = kernels.eval_plan
    try:
        for label, impl in (("python", _pykernels.eval_plan), ("cython", _ckernels.eval_plan)):
            kernels.eval_plan = impl
            times[label] = timed(find_countermodel, formulas, 1)
    finally:
        kernels.eval_plan = saved
    name = "find_countermodel (4 worlds)"
    print(f"{name:34} {len(formulas):>6} {times['python']:>10.4f} {times['cython']:>10.4f} "
          f"{times['python'] / times['cython']:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
