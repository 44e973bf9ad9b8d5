"""Formula syntax: AST, weight, total order, parser and printer.

The language has propositional variables, falsum, conjunction, disjunction,
implication and a single box modality. There is no diamond and no primitive
negation; ``~a`` is accepted by the parser as sugar for ``a -> #``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class Formula:
    """Base class; concrete shapes are Var, Bot, And, Or, Imp, Box."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    body: Formula


def weight(f: Formula) -> int:
    """Termination weight; conjunction counts one extra so that
    w(a -> (b -> c)) < w((a /\\ b) -> c)."""
    if isinstance(f, (Var, Bot)):
        return 1
    if isinstance(f, (Or, Imp)):
        return weight(f.left) + weight(f.right) + 1
    if isinstance(f, And):
        return weight(f.left) + weight(f.right) + 2
    if isinstance(f, Box):
        return weight(f.body) + 1
    raise TypeError(f"not a formula: {f!r}")


_RANK = {Bot: 0, Var: 1, And: 2, Or: 3, Imp: 4, Box: 5}


def sort_key(f: Formula):
    """Injective key giving a total structural order on formulas.

    Keys of equal rank always have the same shape, so nested tuple
    comparison never mixes types.
    """
    if isinstance(f, Bot):
        return (0,)
    if isinstance(f, Var):
        return (1, f.name)
    if isinstance(f, Box):
        return (5, sort_key(f.body))
    return (_RANK[type(f)], sort_key(f.left), sort_key(f.right))


def compare(a: Formula, b: Formula) -> int:
    """-1, 0 or 1; zero exactly on structural equality."""
    ka, kb = sort_key(a), sort_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Bot):
        return set()
    if isinstance(f, Box):
        return variables(f.body)
    return variables(f.left) | variables(f.right)


class ParseError(ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<seq>=>)|(?P<or>\\/)|(?P<and>/\\)"
    r"|(?P<box>\[\])|(?P<neg>~)|(?P<bot>\#)|(?P<lpar>\()|(?P<rpar>\))"
    r"|(?P<comma>,)|(?P<ident>[a-z][a-zA-Z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError(f"unexpected character {rest[0]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    _SPELLING = {
        "arrow": "'->'",
        "seq": "'=>'",
        "rpar": "')'",
        "comma": "','",
    }

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            shown = self._SPELLING.get(kind, kind)
            raise ParseError(f"expected {shown}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "arrow":
            self.next()
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "or":
            self.next()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "and":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "box":
            self.next()
            return Box(self.unary())
        if kind == "neg":
            self.next()
            return Imp(self.unary(), Bot())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.next()
        if kind == "ident":
            return Var(value)
        if kind == "bot":
            return Bot()
        if kind == "lpar":
            f = self.formula()
            self.expect("rpar")
            return f
        raise ParseError(f"expected a formula, found {value or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    kind, value, pos = p.next()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", pos)
    return f


# Binding strength; parenthesize a child whose level is below the slot's demand.
_LEVEL_IMP, _LEVEL_OR, _LEVEL_AND, _LEVEL_UNARY, _LEVEL_ATOM = 0, 1, 2, 3, 4


def _level(f: Formula) -> int:
    if isinstance(f, Imp):
        return _LEVEL_IMP
    if isinstance(f, Or):
        return _LEVEL_OR
    if isinstance(f, And):
        return _LEVEL_AND
    if isinstance(f, Box):
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def _emit(f: Formula, demand: int) -> str:
    if isinstance(f, Var):
        text = f.name
    elif isinstance(f, Bot):
        text = "#"
    elif isinstance(f, Imp):
        # right associative: left operand needs strictly tighter binding
        text = f"{_emit(f.left, _LEVEL_OR)} -> {_emit(f.right, _LEVEL_IMP)}"
    elif isinstance(f, Or):
        text = f"{_emit(f.left, _LEVEL_OR)} \\/ {_emit(f.right, _LEVEL_AND)}"
    elif isinstance(f, And):
        text = f"{_emit(f.left, _LEVEL_AND)} /\\ {_emit(f.right, _LEVEL_UNARY)}"
    else:
        text = f"[]{_emit(f.body, _LEVEL_UNARY)}"
    if _level(f) < demand:
        return f"({text})"
    return text


def print_formula(f: Formula) -> str:
    """Canonical ASCII rendering with the fewest parentheses; a fixed point
    of parse_formula (negation sugar is input-only)."""
    return _emit(f, _LEVEL_IMP)
