"""Formulas of (idempotent) linear logic in negation normal form.

Surface syntax (ASCII)::

    p3        positive literal        p3^       negative literal
    A * B     tensor                  A @ B     par
    A & B     with                    A + B     plus
    !A        of course               ?A        why not
    (A)^      linear negation, expanded eagerly
    A -o B    linear implication, sugar for A^ @ B

Binary operators are left associative and bind, from tightest to loosest,
``*``, ``@``, ``&``, ``+``, then ``-o`` (right associative).  Prefix
modalities bind tighter than any binary operator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class PosLit(Formula):
    index: int


@dataclass(frozen=True)
class NegLit(Formula):
    index: int


@dataclass(frozen=True)
class Tensor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Par(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class With(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Plus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Bang(Formula):
    body: Formula


@dataclass(frozen=True)
class WhyNot(Formula):
    body: Formula


Literal = Union[PosLit, NegLit]
Sequent = tuple  # tuple[Formula, ...]; one-sided, order matters

BINARY = (Tensor, Par, With, Plus)
_DUAL_BINARY = {Tensor: Par, Par: Tensor, With: Plus, Plus: With}


def is_literal(f: Formula) -> bool:
    return isinstance(f, (PosLit, NegLit))


def dual(f: Formula) -> Formula:
    """Linear negation, pushed to the literals by De Morgan."""
    if isinstance(f, PosLit):
        return NegLit(f.index)
    if isinstance(f, NegLit):
        return PosLit(f.index)
    if isinstance(f, Bang):
        return WhyNot(dual(f.body))
    if isinstance(f, WhyNot):
        return Bang(dual(f.body))
    cls = _DUAL_BINARY[type(f)]
    return cls(dual(f.left), dual(f.right))


def implication(a: Formula, b: Formula) -> Formula:
    return Par(dual(a), b)


def modal_prefix(f: Formula) -> tuple[str, int, Formula]:
    """Strip the maximal run of identical modalities heading ``f``.

    Returns ``(kind, count, core)`` where kind is ``"bang"``, ``"whynot"`` or
    ``"none"``.  ``core`` is the first subformula whose main connective is
    not ``kind``.
    """
    if isinstance(f, Bang):
        cls, kind = Bang, "bang"
    elif isinstance(f, WhyNot):
        cls, kind = WhyNot, "whynot"
    else:
        return "none", 0, f
    n = 0
    while isinstance(f, cls):
        f = f.body
        n += 1
    return kind, n, f


def bangs(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = Bang(f)
    return f


def whynots(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = WhyNot(f)
    return f


def literals(f: Formula) -> set[int]:
    if is_literal(f):
        return {f.index}
    if isinstance(f, (Bang, WhyNot)):
        return literals(f.body)
    return literals(f.left) | literals(f.right)


def size(f: Formula) -> int:
    """Number of connectives."""
    if is_literal(f):
        return 0
    if isinstance(f, (Bang, WhyNot)):
        return 1 + size(f.body)
    return 1 + size(f.left) + size(f.right)


def modal_depth(f: Formula) -> int:
    if is_literal(f):
        return 0
    if isinstance(f, (Bang, WhyNot)):
        return 1 + modal_depth(f.body)
    return max(modal_depth(f.left), modal_depth(f.right))


def sort_key(f: Formula) -> str:
    return print_formula(f)


# ---------------------------------------------------------------- printing

_SYMBOL = {Tensor: "*", Par: "@", With: "&", Plus: "+"}
_PREC = {Tensor: 4, Par: 3, With: 2, Plus: 1}


def print_formula(f: Formula, unicode: bool = False) -> str:
    text = _print(f, 0)
    if unicode:
        for a, b in (("*", "⊗"), ("@", "⅋"), ("+", "⊕"), ("^", "⊥")):
            text = text.replace(a, b)
    return text


def _print(f: Formula, ctx: int) -> str:
    if isinstance(f, PosLit):
        return f"p{f.index}"
    if isinstance(f, NegLit):
        return f"p{f.index}^"
    if isinstance(f, Bang):
        return "!" + _print(f.body, 5)
    if isinstance(f, WhyNot):
        return "?" + _print(f.body, 5)
    prec = _PREC[type(f)]
    # left associative: the right operand needs parentheses at equal precedence
    text = f"{_print(f.left, prec)} {_SYMBOL[type(f)]} {_print(f.right, prec + 1)}"
    return f"({text})" if prec < ctx else text


def print_sequent(seq) -> str:
    return "|- " + ", ".join(print_formula(f) for f in seq)


# ----------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(p\d+)|(-o)|([*@&+!?^()]))")
_BINOPS = [("+", Plus), ("&", With), ("@", Par), ("*", Tensor)]  # loosest first


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unknown token {text[start]!r}", start)
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {tok!r}, found {found!r}", self.pos())
        self.i += 1

    def implication(self) -> Formula:
        left = self.binary(0)
        if self.peek() == "-o":
            self.take()
            return Par(dual(left), self.implication())
        return left

    def binary(self, level: int) -> Formula:
        if level == len(_BINOPS):
            return self.unary()
        sym, cls = _BINOPS[level]
        left = self.binary(level + 1)
        while self.peek() == sym:
            self.take()
            left = cls(left, self.binary(level + 1))
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Bang(self.unary())
        if tok == "?":
            self.take()
            return WhyNot(self.unary())
        return self.postfix()

    def postfix(self) -> Formula:
        tok = self.peek()
        if tok.startswith("p"):
            self.take()
            f: Formula = PosLit(int(tok[1:]))
        elif tok == "(":
            self.take()
            f = self.implication()
            self.expect(")")
        else:
            found = tok or "end of input"
            raise ParseError(f"unexpected {found!r}", self.pos())
        while self.peek() == "^":
            self.take()
            f = dual(f)
        return f


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.implication()
    if p.peek() != "":
        raise ParseError(f"unexpected {p.peek()!r}", p.pos())
    return f


def parse_sequent(text: str) -> tuple:
    """Parse ``"|- A, B, ..."``; the turnstile is optional."""
    body = text.strip()
    if body.startswith("|-"):
        body = body[2:]
    if not body.strip():
        return ()
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return tuple(parse_formula(part) for part in parts)
