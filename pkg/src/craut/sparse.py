"""Sparse multivariate polynomials over Q(i) with named variables."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .gaussrat import ONE, ZERO, GaussRat


class SPoly:
    """Polynomial as ``{exponent tuple: GaussRat}`` over a fixed variable list.

    Variables are identified by position; ``names`` is only used for text.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple, GaussRat] | None = None):
        self.names = tuple(names)
        self.terms: dict[tuple, GaussRat] = {}
        if terms:
            nv = len(self.names)
            for e, c in terms.items():
                c = GaussRat.coerce(c)
                if len(e) != nv:
                    raise ValueError("exponent tuple has the wrong length")
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def _make(cls, names, terms) -> SPoly:
        obj = object.__new__(cls)
        obj.names = names
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, names) -> SPoly:
        return cls._make(tuple(names), {})

    @classmethod
    def const(cls, names, c) -> SPoly:
        names = tuple(names)
        c = GaussRat.coerce(c)
        return cls._make(names, {(0,) * len(names): c} if c else {})

    @classmethod
    def var(cls, names, k: int, coeff=ONE) -> SPoly:
        names = tuple(names)
        e = [0] * len(names)
        e[k] = 1
        c = GaussRat.coerce(coeff)
        return cls._make(names, {tuple(e): c} if c else {})

    @classmethod
    def monomial(cls, names, exps: Sequence[int], coeff=ONE) -> SPoly:
        c = GaussRat.coerce(coeff)
        return cls._make(tuple(names), {tuple(exps): c} if c else {})

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.names == other.names and self.terms == other.terms
        if isinstance(other, (int, GaussRat)):
            return self == SPoly.const(self.names, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def coefficient(self, exps: Sequence[int]) -> GaussRat:
        return self.terms.get(tuple(exps), ZERO)

    def _check(self, other: SPoly):
        if self.names != other.names:
            raise ValueError("polynomials live in different variable sets")

    def __add__(self, other):
        if not isinstance(other, SPoly):
            other = SPoly.const(self.names, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return SPoly._make(self.names, t)

    __radd__ = __add__

    def __neg__(self):
        return SPoly._make(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SPoly):
            other = SPoly.const(self.names, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> SPoly:
        c = GaussRat.coerce(c)
        if not c:
            return SPoly.zero(self.names)
        return SPoly._make(self.names, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SPoly):
            return self.scale(other)
        self._check(other)
        t: dict[tuple, GaussRat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e)
                t[e] = c1 * c2 if s is None else s + c1 * c2
        return SPoly._make(self.names, {e: c for e, c in t.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = SPoly.const(self.names, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, k: int) -> SPoly:
        t = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                t[tuple(e2)] = c * e[k]
        return SPoly._make(self.names, t)

    def conj_coeffs(self) -> SPoly:
        return SPoly._make(self.names, {e: c.conj() for e, c in self.terms.items()})

    def permute(self, perm: Sequence[int], names: Sequence[str] | None = None) -> SPoly:
        """Move variable ``k`` to position ``perm[k]``."""
        nv = len(perm)
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * nv
            for k, x in enumerate(e):
                e2[perm[k]] += x
            t[tuple(e2)] = c
        return SPoly._make(tuple(names) if names else self.names, t)

    def embed(self, names: Sequence[str], positions: Sequence[int]) -> SPoly:
        """Re-express in a larger variable set; variable k goes to ``positions[k]``."""
        nv = len(names)
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * nv
            for k, x in enumerate(e):
                e2[positions[k]] += x
            e2 = tuple(e2)
            s = t.get(e2)
            t[e2] = c if s is None else s + c
        return SPoly._make(tuple(names), {e: c for e, c in t.items() if c})

    def compose(self, images: Sequence[SPoly]) -> SPoly:
        """Substitute ``images[k]`` for variable ``k``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].names
        powers: list[dict[int, SPoly]] = [{0: SPoly.const(target, 1), 1: im} for im in images]

        def pw(k: int, d: int) -> SPoly:
            cache = powers[k]
            if d not in cache:
                half = pw(k, d // 2)
                cache[d] = half * half if d % 2 == 0 else half * half * images[k]
            return cache[d]

        out = SPoly.zero(target)
        for e, c in self.terms.items():
            term = SPoly.const(target, c)
            for k, d in enumerate(e):
                if d:
                    term = term * pw(k, d)
            out = out + term
        return out

    def degree(self, weights: Sequence[int] | None = None) -> int:
        if not self.terms:
            return -1
        if weights is None:
            return max(sum(e) for e in self.terms)
        return max(sum(w * x for w, x in zip(weights, e)) for e in self.terms)

    def homogeneous_parts(self, weights: Sequence[int]) -> dict[int, SPoly]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            d = sum(w * x for w, x in zip(weights, e))
            parts.setdefault(d, {})[e] = c
        return {d: SPoly._make(self.names, t) for d, t in parts.items()}

    def sorted_terms(self) -> list[tuple[tuple, GaussRat]]:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def __str__(self):
        return render_spoly(self)

    def __repr__(self):
        return f"SPoly({str(self)!r})"


def _monomial_text(names: Sequence[str], e: Sequence[int]) -> str:
    return "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)


def render_spoly(p: SPoly, order: Iterable | None = None) -> str:
    if not p.terms:
        return "0"
    out = []
    for e, c in (order if order is not None else p.sorted_terms()):
        mono = _monomial_text(p.names, e)
        if c.re and c.im:
            body = f"({c})" + (f"*{mono}" if mono else "")
            sign = "+"
        else:
            v = c.re if c.re else c.im
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if c.im:
                coef = "i" if mag == 1 else f"{GaussRat(mag)}*i"
            else:
                coef = "" if mag == 1 else str(GaussRat(mag))
            if mono:
                body = f"{coef}*{mono}" if coef else mono
            else:
                body = coef or "1"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s
