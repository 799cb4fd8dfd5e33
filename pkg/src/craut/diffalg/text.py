"""Canonical text form of linear differential polynomials.

Derivatives are written ``name[e1,...,em]`` (``name`` alone for order 0),
barred ones as ``bar(name)[...]``.  A polynomial is a signed sum of terms
``coeff*derivative`` with an optional constant, for example
``-2*i*Z0 - bar(W1_1) + 1/2*u[0,2] + 3``.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

from ..errors import ParseError
from ..gaussrat import ONE, ZERO, GaussRat
from .ring import DerivationOp, Derivative, DiffRing

if TYPE_CHECKING:
    from .poly import LinDiffPoly
    from .ranking import Ranking


def render_derivative(ring: DiffRing, d: Derivative) -> str:
    name = ring.name(d.indet)
    if not any(d.op):
        return name
    return f"{name}[{','.join(map(str, d.op))}]"


def _coeff_prefix(c: GaussRat) -> tuple[str, str]:
    """Split a coefficient into a sign and a multiplicative prefix."""
    if c.re and c.im:
        return "+", f"({c})*"
    if c.im:
        v = c.im
        sign = "-" if v < 0 else "+"
        v = abs(v)
        body = "i" if v == 1 else f"{GaussRat(v)}*i"
        return sign, body + "*"
    v = c.re
    sign = "-" if v < 0 else "+"
    v = abs(v)
    return sign, "" if v == 1 else f"{GaussRat(v)}*"


def render_poly(p: LinDiffPoly, r: Ranking | None = None) -> str:
    if r is not None:
        items = p.sorted_terms(r)
    else:
        items = sorted(p.terms.items(),
                       key=lambda kv: (kv[0].order, -kv[0].indet, tuple(kv[0].op)),
                       reverse=True)
    parts: list[tuple[str, str]] = []
    for d, c in items:
        sign, pre = _coeff_prefix(c)
        parts.append((sign, pre + render_derivative(p.ring, d)))
    if p.constant:
        c = p.constant
        if c.re and c.im:
            parts.append(("+", f"({c})"))
        else:
            s = str(c)
            parts.append(("-", s[1:]) if s.startswith("-") else ("+", s))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<bar>bar\()"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*()\[\],])"
    r")"
)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.toks.append(("eof", "", n))
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val: str):
        t = self.next()
        if t[1] != val:
            raise ParseError(f"expected {val!r}, found {t[1] or 'end of input'!r}", self.text, t[2])
        return t


def _parse_int(lx: _Lexer) -> int:
    t = lx.next()
    if t[0] != "num" or "/" in t[1]:
        raise ParseError("expected a non-negative integer", lx.text, t[2])
    return int(t[1])


def _parse_derivative(lx: _Lexer, ring: DiffRing) -> Derivative:
    t = lx.next()
    if t[0] == "bar":
        nt = lx.next()
        if nt[0] != "name":
            raise ParseError("expected an indeterminate name", lx.text, nt[2])
        lx.expect(")")
        name, pos = f"bar({nt[1]})", t[2]
    elif t[0] == "name":
        name, pos = t[1], t[2]
    else:
        raise ParseError("expected a derivative", lx.text, t[2])
    try:
        k = ring.index(name)
    except KeyError:
        raise ParseError(f"unknown indeterminate {name!r}", lx.text, pos) from None
    exps = [0] * ring.m
    if lx.peek()[1] == "[":
        lb = lx.next()
        exps = [_parse_int(lx)]
        while lx.peek()[1] == ",":
            lx.next()
            exps.append(_parse_int(lx))
        lx.expect("]")
        if len(exps) != ring.m:
            raise ParseError(f"expected {ring.m} exponents, got {len(exps)}", lx.text, lb[2])
    return Derivative(k, DerivationOp(exps))


def _parse_scalar(lx: _Lexer) -> GaussRat:
    """A rational, ``i``, ``q*i`` or a parenthesised Gaussian rational."""
    t = lx.peek()
    if t[1] == "(":
        lx.next()
        start = lx.peek()[2]
        depth = 0
        while True:
            u = lx.peek()
            if u[0] == "eof":
                raise ParseError("unbalanced parenthesis", lx.text, t[2])
            if u[1] == ")" and depth == 0:
                break
            depth += u[1] == "("
            depth -= u[1] == ")"
            lx.next()
        end = lx.peek()[2]
        lx.next()
        try:
            return GaussRat.parse(lx.text[start:end])
        except ValueError:
            raise ParseError("malformed coefficient", lx.text, start) from None
    if t[0] == "num":
        lx.next()
        val = GaussRat(t[1])
        if lx.peek()[1] == "*" and lx.peek(1)[:2] == ("name", "i"):
            lx.next()
            lx.next()
            val = val * GaussRat(0, 1)
        return val
    if t[:2] == ("name", "i"):
        lx.next()
        return GaussRat(0, 1)
    raise ParseError("expected a coefficient", lx.text, t[2])


def _is_imag_unit(lx: _Lexer, ring: DiffRing) -> bool:
    t = lx.peek()
    if t[:2] != ("name", "i"):
        return False
    try:
        ring.index("i")
    except KeyError:
        return True
    return False


def parse_poly(text: str, ring: DiffRing) -> LinDiffPoly:
    """Parse the canonical text form back into a polynomial."""
    from .poly import LinDiffPoly

    lx = _Lexer(text)
    terms: dict[Derivative, GaussRat] = {}
    const = ZERO
    first = True
    while True:
        t = lx.peek()
        if t[0] == "eof":
            if first:
                raise ParseError("empty polynomial", text, t[2])
            break
        sign = ONE
        if t[1] in "+-" and t[0] == "op":
            lx.next()
            sign = -ONE if t[1] == "-" else ONE
        elif not first:
            raise ParseError(f"expected '+' or '-', found {t[1]!r}", text, t[2])
        first = False
        coeff = None
        nt = lx.peek()
        if nt[0] == "num" or nt[1] == "(" or _is_imag_unit(lx, ring):
            coeff = _parse_scalar(lx)
            if lx.peek()[1] == "*":
                lx.next()
            else:
                const = const + sign * coeff
                continue
        d = _parse_derivative(lx, ring)
        c = sign * (coeff if coeff is not None else ONE)
        s = terms.get(d, ZERO) + c
        if s:
            terms[d] = s
        else:
            terms.pop(d, None)
    return LinDiffPoly._make(ring, terms, const)


def parse_derivative(text: str, ring: DiffRing) -> Derivative:
    lx = _Lexer(text)
    d = _parse_derivative(lx, ring)
    t = lx.peek()
    if t[0] != "eof":
        raise ParseError(f"trailing input {t[1]!r}", text, t[2])
    return d
