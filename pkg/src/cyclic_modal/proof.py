"""Hilbert-style proof scripts over the cyclic axiom bases.

Script text, one item per line (``#`` starts a comment)::

    base chl
    let b = [*]p
    1. true ; taut A -> A where A := true
    2. [] true ; nec(1)

``base`` picks the default axiom base. ``let`` introduces an abbreviation
for the rest of the script: free occurrences of the name in later formulas
are replaced by its definition (schemas are left alone). Line numbers run
1, 2, 3, ... Justifications:

    taut SCHEMA [where X := F, Y := G, ...]
    mp(i, j)        line j is (line i -> this line)
    nec(i)          this line is [] (line i)
    lr(i)           line i is [] (this line) -> this line
    k_ax(F, G)      [](F -> G) -> ([]F -> []G)
    bisim_ax(F, G)  F <-> G, for bisimilar F and G
    four_ax(F)      []F -> [][]F
    ipe(i, p)       line i is A <-> B with A, B modalised in p;
                    this line is fix p.A <-> fix p.B
    henkin_ax       fix p.[]p
    nec_bullet(i)   this line is [*] (line i)

Every comparison is up to bisimilarity.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from importlib import resources

from .formula import (
    AND,
    BOT,
    BOX,
    IMP,
    NOT,
    OR,
    TOP,
    Formula,
    FormulaError,
    box,
    box_bullet,
    fix_point,
    iff,
    imp,
    is_acyclic,
    is_modalised,
    split_iff,
    substitute,
    to_term,
    var,
)
from .graph import bisimilar
from .syntax import IDENT, ParseError, parse_prefix

RULES = (
    "taut", "mp", "nec", "lr", "k_ax", "bisim_ax",
    "four_ax", "ipe", "henkin_ax", "nec_bullet",
)

_KCM = frozenset({"taut", "mp", "nec", "k_ax", "bisim_ax"})
BASES = {
    "kcircminus": _KCM,
    "kcirc": _KCM | {"ipe"},
    "chl0": _KCM | {"ipe", "henkin_ax"},
    "chl1": _KCM | {"nec_bullet"},
    "chl": _KCM | {"lr"},
    "glcirc": _KCM | {"lr", "four_ax"},
}


class ScriptError(ValueError):
    """The script text is malformed."""


class BaseError(ValueError):
    pass


@dataclass(frozen=True)
class Justification:
    kind: str
    refs: tuple = ()
    args: tuple = ()  # formulas
    schema: Formula | None = None
    subst: dict = field(default_factory=dict, hash=False, compare=False)
    var: str | None = None


@dataclass(frozen=True)
class ProofLine:
    number: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class ProofScript:
    base: str
    lines: tuple


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    line: int | None = None
    reason: str = ""
    base_error: bool = False

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "accepted"
        return f"rejected at line {self.line}: {self.reason}"


def instantiate_schema(schema: Formula, sigma: dict) -> Formula:
    return substitute(schema, sigma)


def _truth(t, env):
    lab = t[0]
    if lab == TOP:
        return True
    if lab == BOT:
        return False
    if lab == NOT:
        return not _truth(t[1], env)
    if lab == AND:
        return _truth(t[1], env) and _truth(t[2], env)
    if lab == OR:
        return _truth(t[1], env) or _truth(t[2], env)
    if lab == IMP:
        return (not _truth(t[1], env)) or _truth(t[2], env)
    return env[lab]


def is_tautology(schema: Formula) -> bool:
    """Truth-table check; the schema must be a box-free acyclic formula."""
    if BOX in schema.labels or not is_acyclic(schema):
        raise FormulaError("a tautology schema must be propositional")
    t = to_term(schema)
    names = sorted(schema.variables)
    return all(
        _truth(t, dict(zip(names, row)))
        for row in itertools.product((False, True), repeat=len(names))
    )


HENKIN = fix_point("p", box(var("p")))


# -- checking ---------------------------------------------------------------


def _check_line(k: int, f: Formula, j: Justification, prior: dict) -> str | None:
    """Reason for rejecting line ``k``, or None."""
    for i in j.refs:
        if not 1 <= i < k:
            return f"reference {i} does not point to an earlier line"
    kind = j.kind
    if kind == "taut":
        try:
            if not is_tautology(j.schema):
                return "schema is not a tautology"
        except FormulaError as e:
            return str(e)
        want = instantiate_schema(j.schema, j.subst)
    elif kind == "mp":
        i, jj = j.refs
        if not bisimilar(prior[jj], imp(prior[i], f)):
            return f"line {jj} is not (line {i} -> this line)"
        return None
    elif kind == "nec":
        want = box(prior[j.refs[0]])
    elif kind == "lr":
        i = j.refs[0]
        if not bisimilar(prior[i], imp(box(f), f)):
            return f"line {i} is not ([] this line -> this line)"
        return None
    elif kind == "k_ax":
        a, b = j.args
        want = imp(box(imp(a, b)), imp(box(a), box(b)))
    elif kind == "bisim_ax":
        a, b = j.args
        if not bisimilar(a, b):
            return "the two sides are not bisimilar"
        want = iff(a, b)
    elif kind == "four_ax":
        (a,) = j.args
        want = imp(box(a), box(box(a)))
    elif kind == "ipe":
        i = j.refs[0]
        parts = split_iff(prior[i])
        if parts is None or not bisimilar(prior[i], iff(*parts)):
            return f"line {i} is not an equivalence"
        a, b = parts
        if not (is_modalised(a, j.var) and is_modalised(b, j.var)):
            return f"the sides of line {i} are not modalised in {j.var}"
        want = iff(fix_point(j.var, a), fix_point(j.var, b))
    elif kind == "henkin_ax":
        want = HENKIN
    elif kind == "nec_bullet":
        want = box_bullet(prior[j.refs[0]])
    else:
        return f"unknown rule {kind}"
    if not bisimilar(f, want):
        return f"formula does not match the {kind} instance"
    return None


def check_proof(script: ProofScript, base: str | None = None) -> Verdict:
    base = base or script.base
    if base not in BASES:
        raise BaseError(f"unknown base {base!r}; expected one of {', '.join(BASES)}")
    allowed = BASES[base]
    prior: dict = {}
    for line in script.lines:
        k = line.number
        if line.justification.kind not in allowed:
            return Verdict(False, k, f"rule {line.justification.kind} is not in base {base}", True)
        reason = _check_line(k, line.formula, line.justification, prior)
        if reason is not None:
            return Verdict(False, k, reason)
        prior[k] = line.formula
    return Verdict(True)


# -- script text ------------------------------------------------------------

_LINE = re.compile(r"\s*(\d+)\s*\.")
_REFS = {"mp": 2, "nec": 1, "lr": 1, "nec_bullet": 1}
_ARGS = {"k_ax": 2, "bisim_ax": 2, "four_ax": 1}


class _Cursor:
    def __init__(self, text: str, lets: dict, where: str):
        self.text = text
        self.pos = 0
        self.lets = lets
        self.where = where

    def fail(self, msg):
        raise ScriptError(f"{self.where}: {msg} (column {self.pos + 1})")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def eat(self, s: str) -> bool:
        self.skip()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def need(self, s: str):
        if not self.eat(s):
            self.fail(f"expected {s!r}")

    def done(self) -> bool:
        self.skip()
        return self.pos == len(self.text)

    def word(self) -> str:
        self.skip()
        m = IDENT.match(self.text, self.pos)
        if not m:
            self.fail("expected a name")
        self.pos = m.end()
        return m.group()

    def number(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected a line number")
        self.pos = m.end()
        return int(m.group())

    def formula(self, expand: bool = True) -> Formula:
        try:
            f, self.pos = parse_prefix(self.text, self.pos)
        except ParseError as e:
            raise ScriptError(f"{self.where}: {e}") from None
        except FormulaError as e:
            raise ScriptError(f"{self.where}: {e}") from None
        return substitute(f, self.lets) if expand else f


def _justification(cur: _Cursor) -> Justification:
    kind = cur.word()
    if kind == "henkin_ax":
        return Justification(kind)
    if kind == "taut":
        schema = cur.formula(expand=False)
        sigma = {}
        cur.skip()
        if cur.eat("where"):
            while True:
                name = cur.word()
                cur.need(":=")
                sigma[name] = cur.formula()
                if not cur.eat(","):
                    break
        return Justification(kind, schema=schema, subst=sigma)
    if kind in _REFS:
        cur.need("(")
        refs = [cur.number()]
        for _ in range(_REFS[kind] - 1):
            cur.need(",")
            refs.append(cur.number())
        cur.need(")")
        return Justification(kind, refs=tuple(refs))
    if kind in _ARGS:
        cur.need("(")
        args = [cur.formula()]
        for _ in range(_ARGS[kind] - 1):
            cur.need(",")
            args.append(cur.formula())
        cur.need(")")
        return Justification(kind, args=tuple(args))
    if kind == "ipe":
        cur.need("(")
        i = cur.number()
        cur.need(",")
        p = cur.word()
        cur.need(")")
        return Justification(kind, refs=(i,), var=p)
    cur.fail(f"unknown rule {kind!r}")


def parse_script(text: str, base: str | None = None) -> ProofScript:
    lets: dict = {}
    lines = []
    header = None
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        where = f"line {n}"
        if body.startswith("base "):
            header = body[5:].strip()
            continue
        if body.startswith("let "):
            cur = _Cursor(body, lets, where)
            cur.pos = 4
            name = cur.word()
            cur.need("=")
            lets[name] = cur.formula()
            if not cur.done():
                cur.fail("unexpected text after definition")
            continue
        m = _LINE.match(body)
        if not m:
            raise ScriptError(f"{where}: expected 'k. formula ; justification'")
        k = int(m.group(1))
        if k != len(lines) + 1:
            raise ScriptError(f"{where}: expected line number {len(lines) + 1}, found {k}")
        cur = _Cursor(body, lets, where)
        cur.pos = m.end()
        f = cur.formula()
        cur.need(";")
        j = _justification(cur)
        if not cur.done():
            cur.fail("unexpected text after justification")
        lines.append(ProofLine(k, f, j))
    chosen = base or header or "chl"
    if chosen not in BASES:
        raise BaseError(f"unknown base {chosen!r}")
    return ProofScript(chosen, tuple(lines))


def bundled_scripts() -> dict[str, str]:
    """Bundled script texts by name."""
    folder = resources.files("cyclic_modal") / "scripts"
    return {
        p.name[: -len(".prf")]: p.read_text(encoding="utf-8")
        for p in sorted(folder.iterdir(), key=lambda p: p.name)
        if p.name.endswith(".prf")
    }


def conclusion(script: ProofScript) -> Formula:
    return script.lines[-1].formula
