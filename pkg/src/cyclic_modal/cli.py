"""Command-line interface.

Exit codes: 0 for success or a positive verdict, 1 for a negative verdict,
2 for errors. A formula argument is surface syntax, or ``@FILE`` to read
surface syntax or graph JSON from a file.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixpoint, formula, gl, graph, js, kripke, proof, syntax

POSITIVE, NEGATIVE, ERROR = 0, 1, 2


def load_formula(arg: str) -> formula.Formula:
    text = arg
    if arg.startswith("@"):
        text = Path(arg[1:]).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return syntax.from_json(text)
    return syntax.parse(text)


def _emit(f: formula.Formula, fmt: str = "text") -> None:
    if fmt == "json":
        print(syntax.to_json(f, indent=2))
    elif fmt == "dot":
        print(syntax.to_dot(f), end="")
    else:
        print(syntax.render(f))


def _model_json(m: kripke.KripkeModel, world: int | None = None) -> str:
    d = m.to_dict()
    if world is not None:
        d["world"] = world
    return json.dumps(d)


def cmd_parse(a) -> int:
    _emit(load_formula(a.input), a.out)
    return POSITIVE


def cmd_min(a) -> int:
    _emit(graph.minimize(load_formula(a.formula)), a.out)
    return POSITIVE


def cmd_bisim(a) -> int:
    same = graph.bisimilar(load_formula(a.left), load_formula(a.right))
    print("bisimilar" if same else "not bisimilar")
    return POSITIVE if same else NEGATIVE


def cmd_cycles(a) -> int:
    f = load_formula(a.formula)
    cycles = graph.simple_cycles(f)
    print(f"{len(cycles)} simple cycle(s)")
    for c in cycles:
        print(" -> ".join(f"{v}:{f.labels[v]}" for v in c))
    return POSITIVE


def cmd_snip(a) -> int:
    _emit(formula.snip(load_formula(a.formula), a.var), a.out)
    return POSITIVE


def cmd_fix(a) -> int:
    _emit(formula.fix_point(a.var, load_formula(a.formula)), a.out)
    return POSITIVE


def cmd_solve(a) -> int:
    system = syntax.parse_system(Path(a.letrec).read_text(encoding="utf-8"))
    solution = fixpoint.solve(system)
    for q in system.unknowns:
        print(f"{q} = {syntax.render(solution[q])}")
    return POSITIVE if fixpoint.verify_solution(system, solution) else ERROR


def cmd_js(a) -> int:
    out = js.js(load_formula(a.formula))
    _emit(js.simplify(out) if a.simplify else out, a.out)
    return POSITIVE


def cmd_explicit_fp(a) -> int:
    _emit(js.explicit_fixed_point(a.var, load_formula(a.formula)), a.out)
    return POSITIVE


def cmd_decide(a) -> int:
    f = load_formula(a.formula)
    verdict = gl.gl_decide(f) if a.logic == "gl" else js.glcirc_decide(f)
    if verdict.provable:
        print("provable")
        return POSITIVE
    print("not provable")
    print(_model_json(verdict.witness, verdict.world))
    return NEGATIVE


def cmd_eval(a) -> int:
    model = kripke.KripkeModel.from_dict(json.loads(Path(a.model).read_text(encoding="utf-8")))
    f = load_formula(a.formula)
    worlds = [a.world] if a.world is not None else range(model.world_count)
    ok = True
    for w in worlds:
        v = kripke.forces(model, w, f)
        ok &= v
        print(f"world {w}: {'true' if v else 'false'}")
    return POSITIVE if ok else NEGATIVE


def cmd_countermodel(a) -> int:
    f = load_formula(a.formula)
    hit = kripke.find_countermodel(f, a.max_worlds, a.max_vars, transitive=a.transitive)
    if hit is None:
        print(f"no countermodel with at most {a.max_worlds} worlds")
        return POSITIVE
    print(_model_json(*hit))
    return NEGATIVE


def cmd_wfl_reduce(a) -> int:
    seq = formula.wfl_reduction(load_formula(a.formula))
    for h in seq.hypotheses:
        print(f"hyp: {syntax.render(h)}")
    print(f"goal: {syntax.render(seq.goal)}")
    return POSITIVE


def cmd_check_proof(a) -> int:
    path = Path(a.script)
    if path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        bundled = proof.bundled_scripts()
        if a.script not in bundled:
            raise FileNotFoundError(f"no such script: {a.script}")
        text = bundled[a.script]
    script = proof.parse_script(text)
    verdict = proof.check_proof(script, a.base)
    print(verdict)
    return POSITIVE if verdict.accepted else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclic-modal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    def out_flag(sp):
        sp.add_argument("--out", choices=("text", "json", "dot"), default="text")

    sp = add("parse", cmd_parse, "parse a formula and print it")
    sp.add_argument("--in", dest="input", required=True, metavar="F")
    out_flag(sp)
    sp = add("min", cmd_min, "minimize up to bisimilarity")
    sp.add_argument("formula")
    out_flag(sp)
    sp = add("bisim", cmd_bisim, "decide bisimilarity")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = add("cycles", cmd_cycles, "list simple cycles")
    sp.add_argument("formula")
    sp = add("snip", cmd_snip, "snip the root to a new variable")
    sp.add_argument("formula")
    sp.add_argument("var")
    out_flag(sp)
    sp = add("fix", cmd_fix, "form a fixed point")
    sp.add_argument("var")
    sp.add_argument("formula")
    out_flag(sp)
    sp = add("solve", cmd_solve, "solve an equation system")
    sp.add_argument("--letrec", required=True, metavar="FILE")
    sp = add("js", cmd_js, "translate into an acyclic GL formula")
    sp.add_argument("formula")
    sp.add_argument("--simplify", action="store_true", help="absorb true in boolean positions")
    out_flag(sp)
    sp = add("explicit-fp", cmd_explicit_fp, "explicit fixed point of a modalised formula")
    sp.add_argument("var")
    sp.add_argument("formula")
    out_flag(sp)
    sp = add("decide", cmd_decide, "decide provability")
    sp.add_argument("--logic", choices=("gl", "glcirc"), default="glcirc")
    sp.add_argument("formula")
    sp = add("eval", cmd_eval, "evaluate in a Kripke model")
    sp.add_argument("--model", required=True, metavar="M.json")
    sp.add_argument("--world", type=int)
    sp.add_argument("formula")
    sp = add("countermodel", cmd_countermodel, "search for a finite countermodel")
    sp.add_argument("formula")
    sp.add_argument("--max-worlds", type=int, default=4)
    sp.add_argument("--max-vars", type=int, default=None)
    sp.add_argument("--transitive", action="store_true")
    sp = add("wfl-reduce", cmd_wfl_reduce, "reduce to a sequent over [] and [*]")
    sp.add_argument("formula")
    sp = add("check-proof", cmd_check_proof, "check a proof script")
    sp.add_argument("script", help="script file or bundled script name")
    sp.add_argument("--base", choices=tuple(proof.BASES))
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, AssertionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
