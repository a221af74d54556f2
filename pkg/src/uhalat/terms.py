"""A small term language for vector-lattice expressions.

Grammar, loosest binding first::

    sum     := join (('+' | '-') join)*
    join    := meet (('\\/' | '∨') meet)*
    meet    := unary (('/\\' | '∧') unary)*
    unary   := '-' unary | scalar '*' unary | atom
    scalar  := RATIONAL | '(' '-'? scalar ')'
    atom    := 'u' | 'zero' | 'g' DIGITS | 'abs' '(' sum ')' | '|' sum '|' | '(' sum ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from .free import free_generator, free_unit, free_zero
from .specker import format_rational


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Scale:
    factor: Fraction
    operand: Term


@dataclass(frozen=True)
class Neg:
    operand: Term


@dataclass(frozen=True)
class Abs:
    operand: Term


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - meet join
    left: Term
    right: Term


Term = Union[Unit, Zero, Gen, Scale, Neg, Abs, BinOp]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<meet>/\\|∧)
  | (?P<join>\\/|∨)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[-+*()|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {source[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            tokens.append(Token(text if kind == "punct" else kind, text, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, n: int):
        self.tokens = tokenize(source)
        self.i = 0
        self.n = n

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise TermSyntaxError(f"expected {kind!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return self.advance()

    def parse(self) -> Term:
        t = self.sum()
        if self.tok.kind != "end":
            raise TermSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return t

    def sum(self) -> Term:
        left = self.join()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            left = BinOp(op, left, self.join())
        return left

    def join(self) -> Term:
        left = self.meet()
        while self.tok.kind == "join":
            self.advance()
            left = BinOp("join", left, self.meet())
        return left

    def meet(self) -> Term:
        left = self.unary()
        while self.tok.kind == "meet":
            self.advance()
            left = BinOp("meet", left, self.unary())
        return left

    def _scalar_ahead(self) -> bool:
        j = self.i
        depth = 0
        while self.tokens[j].kind == "(":
            depth += 1
            j += 1
            if self.tokens[j].kind == "-":
                j += 1
        if self.tokens[j].kind != "num":
            return False
        j += 1
        for _ in range(depth):
            if self.tokens[j].kind != ")":
                return False
            j += 1
        return True

    def scalar(self) -> Fraction:
        if self.tok.kind == "(":
            self.advance()
            sign = 1
            if self.tok.kind == "-":
                self.advance()
                sign = -1
            r = self.scalar()
            self.expect(")")
            return sign * r
        return Fraction(self.expect("num").text)

    def unary(self) -> Term:
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.unary())
        if self._scalar_ahead():
            pos = self.tok.pos
            r = self.scalar()
            if self.tok.kind != "*":
                raise TermSyntaxError("a scalar must multiply a term with '*'", pos)
            self.advance()
            return Scale(r, self.unary())
        return self.atom()

    def atom(self) -> Term:
        t = self.tok
        if t.kind == "(":
            self.advance()
            inner = self.sum()
            self.expect(")")
            return inner
        if t.kind == "|":
            self.advance()
            inner = self.sum()
            self.expect("|")
            return Abs(inner)
        if t.kind == "name":
            self.advance()
            if t.text == "u":
                return Unit()
            if t.text == "zero":
                return Zero()
            if t.text == "abs":
                self.expect("(")
                inner = self.sum()
                self.expect(")")
                return Abs(inner)
            m = re.fullmatch(r"g(\d+)", t.text)
            if m:
                idx = int(m.group(1))
                if self.n is not None and idx >= self.n:
                    raise TermSyntaxError(f"unknown generator {t.text!r} ({self.n} declared)", t.pos)
                return Gen(idx)
            raise TermSyntaxError(f"unknown name {t.text!r}", t.pos)
        raise TermSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_term(source: str, n: int | None = None) -> Term:
    """Parse ``source``; generator indices must be below ``n`` when given."""
    return _Parser(source, n).parse()


_SPELLING = {"+": "+", "-": "-", "meet": "/\\", "join": "\\/"}


def print_term(t: Term) -> str:
    """Fully parenthesized ASCII form; ``parse_term`` reads it back."""
    if isinstance(t, Unit):
        return "u"
    if isinstance(t, Zero):
        return "zero"
    if isinstance(t, Gen):
        return f"g{t.index}"
    if isinstance(t, Scale):
        return f"({format_rational(t.factor)})*{print_term(t.operand)}"
    if isinstance(t, Neg):
        return f"-{print_term(t.operand)}"
    if isinstance(t, Abs):
        return f"abs({print_term(t.operand)})"
    if isinstance(t, BinOp):
        return f"({print_term(t.left)} {_SPELLING[t.op]} {print_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def generators_used(t: Term) -> set[int]:
    if isinstance(t, Gen):
        return {t.index}
    if isinstance(t, (Scale, Neg, Abs)):
        return generators_used(t.operand)
    if isinstance(t, BinOp):
        return generators_used(t.left) | generators_used(t.right)
    return set()


def eval_term(t: Term, context: Any) -> Any:
    """Evaluate ``t`` in ``context``.

    ``context`` needs ``unit``, ``zero`` and ``generator(i)``; values must
    support ``+ - * & | abs``.  Both :class:`~uhalat.free.FreeLattice` and
    :class:`NamedLattice` qualify, as does :data:`~uhalat.terms.OMEGA`.
    """
    if isinstance(t, Unit):
        return context.unit
    if isinstance(t, Zero):
        return context.zero
    if isinstance(t, Gen):
        n = getattr(context, "n", None)
        if n is not None and t.index >= n:
            raise ValueError(f"generator g{t.index} not available in a context with {n}")
        return context.generator(t.index)
    if isinstance(t, Scale):
        return t.factor * eval_term(t.operand, context)
    if isinstance(t, Neg):
        return -eval_term(t.operand, context)
    if isinstance(t, Abs):
        return abs(eval_term(t.operand, context))
    left, right = eval_term(t.left, context), eval_term(t.right, context)
    if t.op == "+":
        return left + right
    if t.op == "-":
        return left - right
    if t.op == "meet":
        return left & right
    return left | right


@dataclass(frozen=True)
class NamedLattice:
    """A Specker lattice with chosen elements bound to ``g0, g1, ...``."""

    lattice: Any
    generators: tuple

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def unit(self):
        return self.lattice.unit

    @property
    def zero(self):
        return self.lattice.zero

    def generator(self, i: int):
        return self.generators[i]


class _Omega:
    """The countably generated free object, evaluated lazily."""

    n = None

    @property
    def unit(self):
        return free_unit()

    @property
    def zero(self):
        return free_zero()

    def generator(self, i: int):
        return free_generator(i)


OMEGA = _Omega()
