"""Parser for plain polynomial expressions such as ``(4*w1 + 2*i*z^2)``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError
from .gaussrat import GaussRat
from .sparse import SPoly

_TOK = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def _lex(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str], aliases: Mapping[str, int]):
        self.text = text
        self.toks = _lex(text)
        self.i = 0
        self.names = tuple(names)
        self.lookup = {n: k for k, n in enumerate(names)}
        self.lookup.update(aliases)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self) -> SPoly:
        acc = SPoly.zero(self.names)
        t = self.peek()
        sign = 1
        if t[1] in ("+", "-") and t[0] == "op":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = acc + self.term().scale(sign)
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ("+", "-"):
                self.take()
                # tolerate "a + -b"
                s = -1 if t[1] == "-" else 1
                while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
                    if self.take()[1] == "-":
                        s = -s
                acc = acc + self.term().scale(s)
            else:
                return acc

    def term(self) -> SPoly:
        acc = self.factor()
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> SPoly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num" or "/" in t[1]:
                raise ParseError("exponent must be a non-negative integer", self.text, t[2])
            base = base ** int(t[1])
        return base

    def atom(self) -> SPoly:
        t = self.take()
        if t[0] == "num":
            return SPoly.const(self.names, GaussRat(Fraction(t[1])))
        if t[0] == "name":
            if t[1] in self.lookup:
                return SPoly.var(self.names, self.lookup[t[1]])
            if t[1] == "i":
                return SPoly.const(self.names, GaussRat(0, 1))
            raise ParseError(f"unknown variable {t[1]!r}", self.text, t[2])
        if t[1] == "(":
            e = self.expr()
            c = self.take()
            if c[1] != ")":
                raise ParseError("expected ')'", self.text, c[2])
            return e
        what = t[1] or "end of input"
        raise ParseError(f"unexpected {what!r}", self.text, t[2])


def parse_spoly(text: str, names: Sequence[str], aliases: Mapping[str, int] | None = None) -> SPoly:
    """Parse a polynomial in the given variables; ``i`` is the imaginary unit."""
    p = _Parser(text, names, aliases or {})
    out = p.expr()
    t = p.peek()
    if t[0] != "eof":
        raise ParseError(f"unexpected {t[1]!r}", text, t[2])
    return out
