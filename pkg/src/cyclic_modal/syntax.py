"""Surface syntax, graph JSON and DOT.

Grammar, loosest binding first::

    F  ::= I | 'fix' x '.' F | 'letrec' x '=' F (';' x '=' F)* 'in' F
    I  ::= O ('<->' I)?
    O  ::= A ('->' O)?             right associative
    A  ::= C ('\\/' C)*            left associative
    C  ::= U ('/\\' U)*            left associative
    U  ::= ('~' | '[]' | '[*]' | '<>') U | 'true' | 'false' | x | '(' F ')'
           | 'fix' ... | 'letrec' ...

Binders extend as far to the right as possible. ``[*]F`` is sugar for
``fix _.[](F /\\ _)`` and ``<>F`` for ``~[]~F``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .fixpoint import EquationSystem, solve
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
    bot,
    box,
    box_bullet,
    conj,
    disj,
    fix_point,
    iff,
    imp,
    is_var,
    neg,
    substitute,
    top,
    var,
)
from .graph import StructuralError, on_cycle

KEYWORDS = frozenset({"fix", "letrec", "in", "true", "false"})
IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")

_TOKEN = re.compile(
    r"\s*(?:(?P<sym><->|->|/\\|\\/|\[\*\]|\[\]|<>|~|\(|\)|=|;|\.)|(?P<id>[a-zA-Z][a-zA-Z0-9_]*))"
)


class ParseError(FormulaError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class FormatError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Token:
    kind: str  # "sym", "id", "other" or "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            out.append(Token("eof", "", pos))
            return out
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            # left for callers that embed formulas in a larger syntax
            out.append(Token("other", text[pos], pos))
            pos += 1
            continue
        start = m.start(m.lastgroup)
        out.append(Token(m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()


class _Parser:
    def __init__(self, text: str, start: int = 0):
        self.toks = [
            Token(t.kind, t.text, t.pos + start) for t in tokenize(text[start:])
        ]
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.tok
        if t.kind != "id" or t.text in KEYWORDS:
            raise ParseError(f"expected a variable name, found {t.text or 'end of input'!r}", t.pos)
        self.i += 1
        return t.text

    def top(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return f

    def formula(self) -> Formula:
        if self.at("fix"):
            return self.fix()
        if self.at("letrec"):
            return self.letrec()
        left = self.implication()
        if self.at("<->"):
            self.i += 1
            return iff(left, self.formula())
        return left

    def fix(self) -> Formula:
        pos = self.expect("fix").pos
        p = self.ident()
        self.expect(".")
        body = self.formula()
        try:
            return fix_point(p, body)
        except FormulaError as e:
            raise type(e)(f"{e} (fix at position {pos})") from None

    def letrec(self) -> Formula:
        pos = self.expect("letrec").pos
        bodies = self.equations()
        self.expect("in")
        body = self.formula()
        try:
            solution = solve(EquationSystem.of(bodies))
        except FormulaError as e:
            raise type(e)(f"{e} (letrec at position {pos})") from None
        return substitute(body, solution)

    def equations(self) -> dict:
        bodies: dict = {}
        while True:
            name_pos = self.tok.pos
            q = self.ident()
            if q in bodies:
                raise ParseError(f"unknown {q} declared twice", name_pos)
            self.expect("=")
            bodies[q] = self.formula()
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
            if self.at(";") and nxt is not None and nxt.kind == "id" and nxt.text not in KEYWORDS:
                self.i += 1
                continue
            break
        return bodies

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return imp(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("\\/"):
            self.i += 1
            f = disj(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("/\\"):
            self.i += 1
            f = conj(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.tok
        if t.kind == "sym":
            if t.text == "~":
                self.i += 1
                return neg(self.unary())
            if t.text == "[]":
                self.i += 1
                return box(self.unary())
            if t.text == "[*]":
                self.i += 1
                return box_bullet(self.unary())
            if t.text == "<>":
                self.i += 1
                return neg(box(neg(self.unary())))
            if t.text == "(":
                self.i += 1
                f = self.formula()
                self.expect(")")
                return f
        if t.kind == "id":
            if t.text == "true":
                self.i += 1
                return top()
            if t.text == "false":
                self.i += 1
                return bot()
            if t.text in ("fix", "letrec"):
                return self.formula()
            return var(self.ident())
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse(text: str) -> Formula:
    return _Parser(text).top()


def parse_prefix(text: str, start: int = 0) -> tuple[Formula, int]:
    """Parse the longest formula starting at ``start``; return it and where parsing stopped."""
    p = _Parser(text, start)
    f = p.formula()
    return f, p.tok.pos


def parse_system(text: str) -> EquationSystem:
    """Parse ``q1 = F1; ...; qn = Fn`` (a trailing ``;`` is allowed)."""
    p = _Parser(text)
    bodies = p.equations() if p.tok.kind != "eof" else {}
    if p.at(";"):
        p.i += 1
    if p.tok.kind != "eof":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos)
    if not bodies:
        raise ParseError("expected at least one equation", 0)
    return EquationSystem.of(bodies)


# -- printing ---------------------------------------------------------------

_PREFIX = {NOT: "~", BOX: "[]"}
_INFIX = {AND: "/\\", OR: "\\/", IMP: "->"}


def render(f: Formula) -> str:
    """Print with ``fix`` binders at cycle entry points, in DFS discovery order.

    Shared acyclic structure is printed once per occurrence.
    """
    used = set(f.variables)
    counter = [0]
    cyc = {a: on_cycle(f, a) for a in range(len(f))}

    def fresh():
        while True:
            name = f"x{counter[0]}"
            counter[0] += 1
            if name not in used:
                return name

    # returns (text, kind); kind is "closed" (safe anywhere) or "binary"/"binder"
    def go(a, path):
        if a in path:
            path[a][1] = True
            return path[a][0], "closed"
        name = None
        if cyc[a]:
            name = fresh()
            path[a] = [name, False]
        text, kind = node(a, path)
        if name is not None:
            referenced = path.pop(a)[1]
            if referenced:
                return f"fix {name}. {text}", "binder"
        return text, kind

    def node(a, path):
        lab = f.labels[a]
        if lab == TOP:
            return "true", "closed"
        if lab == BOT:
            return "false", "closed"
        if is_var(lab):
            return lab, "closed"
        kids = [go(b, path) for b in f.succ[a]]
        if lab in _PREFIX:
            text, kind = kids[0]
            if kind != "closed":
                text = f"({text})"
            sep = "" if lab == NOT else " "
            return f"{_PREFIX[lab]}{sep}{text}", "closed"
        parts = [t if k == "closed" else f"({t})" for t, k in kids]
        return f"{parts[0]} {_INFIX[lab]} {parts[1]}", "binary"

    return go(f.root, {})[0]


def to_dot(f: Formula) -> str:
    lines = ["digraph formula {"]
    for a, lab in enumerate(f.labels):
        shape = "doublecircle" if a == f.root else "circle"
        lines.append(f"  n{a} [label={json.dumps(lab, ensure_ascii=False)}, shape={shape}];")
    for a, ss in enumerate(f.succ):
        for i, b in enumerate(ss):
            lines.append(f'  n{a} -> n{b} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON -------------------------------------------------------------------

_JSON_LABELS = {TOP: "top", BOT: "bot", NOT: "not", BOX: "box", AND: "and", OR: "or", IMP: "imp"}
_FROM_JSON = {v: k for k, v in _JSON_LABELS.items()}


def to_dict(f: Formula) -> dict:
    return {
        "root": f.root,
        "nodes": [
            {"label": _JSON_LABELS.get(lab, f"var:{lab}"), "succ": list(ss)}
            for lab, ss in zip(f.labels, f.succ)
        ],
    }


def to_json(f: Formula, indent: int | None = None) -> str:
    return json.dumps(to_dict(f), indent=indent, ensure_ascii=False)


def from_dict(d) -> Formula:
    if not isinstance(d, dict):
        raise FormatError("expected an object")
    if "root" not in d or "nodes" not in d:
        raise FormatError("needs 'root' and 'nodes'")
    root = d["root"]
    if not isinstance(root, int) or isinstance(root, bool):
        raise FormatError("expected an integer", "$.root")
    nodes = d["nodes"]
    if not isinstance(nodes, list):
        raise FormatError("expected a list", "$.nodes")
    labels, succ = [], []
    for i, node in enumerate(nodes):
        path = f"$.nodes[{i}]"
        if not isinstance(node, dict):
            raise FormatError("expected an object", path)
        lab = node.get("label")
        if not isinstance(lab, str):
            raise FormatError("expected a string", path + ".label")
        if lab.startswith("var:"):
            name = lab[4:]
            if not IDENT.fullmatch(name) or name in KEYWORDS:
                raise FormatError(f"bad variable name {name!r}", path + ".label")
            labels.append(name)
        elif lab in _FROM_JSON:
            labels.append(_FROM_JSON[lab])
        else:
            raise FormatError(f"unknown label {lab!r}", path + ".label")
        ss = node.get("succ", [])
        if not isinstance(ss, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in ss):
            raise FormatError("expected a list of integers", path + ".succ")
        succ.append(tuple(ss))
    try:
        return Formula(tuple(labels), tuple(succ), root)
    except (StructuralError, FormulaError, ValueError) as e:
        raise FormatError(str(e)) from None


def from_json(text: str) -> Formula:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    return from_dict(d)
