"""Parser for element expressions such as ``"v^2*u - 3*e + 1/2"``.

Grammar (whitespace is ignored)::

    expr  := ['-'] term (('+' | '-') term)*
    term  := coeff ['*' atom ('*' atom)*] | atom ('*' atom)*
    coeff := integer ['/' positive-integer]
    atom  := 'v' ['^' nat] | 'u' ['^' nat] | 'e' | '1'

``e`` stands for ``1 - v*u``.  A bare coefficient is accepted so that every
printed element parses back to itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import E, ONE, ToeplitzElement, mul

__all__ = ["ParseError", "Atom", "Term", "ExprAST", "parse_ast", "evaluate", "parse"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.message = message
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Atom:
    name: str  # "v", "u", "e" or "1"
    exp: int = 1


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    atoms: tuple[Atom, ...]


@dataclass(frozen=True)
class ExprAST:
    terms: tuple[Term, ...]


_TOKEN = re.compile(r"\s*(?:(\d+)|([vue])|(\^)|([-+*/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = "num" if m.group(1) else "atom" if m.group(2) else "op"
        tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expr(self) -> ExprAST:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        terms = [self.term(sign)]
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return ExprAST(tuple(terms))

    def term(self, sign: int) -> Term:
        kind, val, _ = self.peek()
        atoms: list[Atom] = []
        if kind == "num":
            coeff = self.coeff()
            if self.peek()[1] != "*":
                return Term(sign * coeff, ())
            self.take()
        elif kind == "atom":
            coeff = Fraction(1)
        else:
            raise self.error("expected a term")
        atoms.append(self.atom())
        while self.peek()[1] == "*":
            self.take()
            atoms.append(self.atom())
        return Term(sign * coeff, tuple(atoms))

    def coeff(self) -> Fraction:
        num = int(self.take()[1])
        if self.peek()[1] != "/":
            return Fraction(num)
        self.take()
        tok = self.take()
        if tok[0] != "num":
            raise self.error("expected a denominator", tok)
        if int(tok[1]) == 0:
            raise self.error("zero denominator", tok)
        return Fraction(num, int(tok[1]))

    def atom(self) -> Atom:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            if val != "1":
                raise self.error("coefficient must come first in a term", tok)
            return Atom("1")
        if kind != "atom":
            raise self.error("expected v, u, e or 1", tok)
        if self.peek()[1] != "^":
            return Atom(val)
        if val == "e":
            raise self.error("e takes no exponent", self.peek())
        self.take()
        if self.peek()[1] == "-":
            raise self.error("negative exponent")
        exp = self.take()
        if exp[0] != "num":
            raise self.error("expected an exponent", exp)
        return Atom(val, int(exp[1]))


def parse_ast(text: str) -> ExprAST:
    return _Parser(text).expr()


def _atom_value(atom: Atom) -> ToeplitzElement:
    if atom.name == "v":
        return ToeplitzElement.monomial(atom.exp, 0)
    if atom.name == "u":
        return ToeplitzElement.monomial(0, atom.exp)
    return E if atom.name == "e" else ONE


def evaluate(ast: ExprAST) -> ToeplitzElement:
    acc = ToeplitzElement.zero()
    for term in ast.terms:
        value = ONE
        for atom in term.atoms:
            value = mul(value, _atom_value(atom))
        acc = acc + value.scaled(term.coeff)
    return acc


def parse(text: str) -> ToeplitzElement:
    return evaluate(parse_ast(text))
