"""Holomorphic polynomial vector fields in ``(z, w)`` and the tangency test."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import ParseError
from ..gaussrat import GaussRat
from ..polytext import parse_spoly
from ..sparse import SPoly, render_spoly
from ..cr.model import ModelSpec, w_names, z_names


def field_names(n: int, k: int) -> tuple[str, ...]:
    return tuple(z_names(n) + w_names(k))


class HoloVectorField:
    """``sum_i Z^i d/dz_i + sum_l W^l d/dw_l`` with polynomial coefficients."""

    __slots__ = ("n", "k", "comps")

    def __init__(self, n: int, k: int, comps: Sequence[SPoly] | None = None):
        self.n = n
        self.k = k
        names = field_names(n, k)
        if comps is None:
            comps = [SPoly.zero(names) for _ in range(n + k)]
        comps = tuple(comps)
        if len(comps) != n + k or any(c.names != names for c in comps):
            raise ValueError("components must be n + k polynomials in z, w")
        self.comps: tuple[SPoly, ...] = comps

    @property
    def names(self) -> tuple[str, ...]:
        return field_names(self.n, self.k)

    @property
    def z_components(self) -> tuple[SPoly, ...]:
        return self.comps[: self.n]

    @property
    def w_components(self) -> tuple[SPoly, ...]:
        return self.comps[self.n:]

    @classmethod
    def from_mapping(cls, n: int, k: int, comps: Mapping[str, str | SPoly]) -> HoloVectorField:
        """Build from ``{"z": "...", "w2": "4*w1 + 2*i*z^2", ...}``."""
        names = field_names(n, k)
        out = [SPoly.zero(names) for _ in names]
        for var, val in comps.items():
            if var not in names:
                raise KeyError(f"unknown coordinate {var!r}")
            out[names.index(var)] = val if isinstance(val, SPoly) else parse_spoly(val, names)
        return cls(n, k, out)

    @classmethod
    def parse(cls, text: str, n: int, k: int) -> HoloVectorField:
        """Parse the text form ``z*d/dz + (4*w1 + 2*i*z^2)*d/dw2``."""
        names = field_names(n, k)
        dnames = [f"_D_{v}" for v in names]
        src = text
        for v in sorted(names, key=len, reverse=True):
            src = src.replace(f"d/d{v}", f"_D_{v}")
        if "d/d" in src:
            pos = src.index("d/d")
            raise ParseError("unknown coordinate after 'd/d'", text, pos)
        p = parse_spoly(src, list(names) + dnames)
        nv = len(names)
        out = [dict() for _ in names]
        for e, c in p.terms.items():
            de = e[nv:]
            if sum(de) != 1:
                raise ParseError("every term needs exactly one d/d factor", text, 0)
            out[de.index(1)][e[:nv]] = c
        return cls(n, k, [SPoly(names, t) for t in out])

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: HoloVectorField) -> HoloVectorField:
        self._check(other)
        return HoloVectorField(self.n, self.k, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: HoloVectorField) -> HoloVectorField:
        self._check(other)
        return HoloVectorField(self.n, self.k, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> HoloVectorField:
        return HoloVectorField(self.n, self.k, [a.scale(c) for a in self.comps])

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return (isinstance(other, HoloVectorField) and self.n == other.n
                and self.k == other.k and self.comps == other.comps)

    def __hash__(self):
        return hash(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _check(self, other: HoloVectorField):
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("vector fields have different signatures")

    def apply(self, f: SPoly) -> SPoly:
        """Derivative of the polynomial ``f`` along the field."""
        out = SPoly.zero(f.names)
        for v, c in enumerate(self.comps):
            if c:
                out = out + c * f.diff(v)
        return out

    def bracket(self, other: HoloVectorField) -> HoloVectorField:
        """``[X, Y]`` with components ``X(Y^v) - Y(X^v)``."""
        self._check(other)
        return HoloVectorField(self.n, self.k, [
            self.apply(b) - other.apply(a) for a, b in zip(self.comps, other.comps)])

    # -- grading -------------------------------------------------------------
    def degrees(self, weights: Sequence[int]) -> set[int]:
        """Weighted degrees of the monomial terms ``mono * d/dv``."""
        out = set()
        for v, c in enumerate(self.comps):
            for e in c.terms:
                out.add(sum(w * x for w, x in zip(weights, e)) - weights[v])
        return out

    def homogeneous_parts(self, weights: Sequence[int]) -> dict[int, HoloVectorField]:
        names = self.names
        parts: dict[int, list[dict]] = {}
        for v, c in enumerate(self.comps):
            for e, x in c.terms.items():
                d = sum(w * y for w, y in zip(weights, e)) - weights[v]
                parts.setdefault(d, [dict() for _ in names])[v][e] = x
        return {d: HoloVectorField(self.n, self.k, [SPoly(names, t) for t in comp])
                for d, comp in sorted(parts.items())}

    # -- real coordinates ------------------------------------------------------
    def real_vector(self) -> dict:
        """Coordinates over R: ``(component, exponents, 0 | 1) -> Fraction``."""
        out = {}
        for v, c in enumerate(self.comps):
            for e, x in c.terms.items():
                if x.re:
                    out[(v, e, 0)] = x.re
                if x.im:
                    out[(v, e, 1)] = x.im
        return out

    @classmethod
    def from_real_vector(cls, n: int, k: int, vec: Mapping) -> HoloVectorField:
        names = field_names(n, k)
        acc = [dict() for _ in names]
        for (v, e, part), x in vec.items():
            g = GaussRat(x) if part == 0 else GaussRat(0, x)
            acc[v][e] = acc[v].get(e, GaussRat(0)) + g
        return cls(n, k, [SPoly(names, t) for t in acc])

    # -- text ----------------------------------------------------------------
    def to_text(self) -> str:
        parts = []
        for v, c in zip(self.names, self.comps):
            if not c:
                continue
            body = render_spoly(c)
            if len(c.terms) > 1:
                parts.append(("+", f"({body})*d/d{v}"))
            elif body in ("1", "-1"):
                parts.append(("-" if body == "-1" else "+", f"d/d{v}"))
            elif body.startswith("-"):
                parts.append(("-", f"{body[1:]}*d/d{v}"))
            else:
                parts.append(("+", f"{body}*d/d{v}"))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_mapping(self) -> dict[str, str]:
        return {v: render_spoly(c) for v, c in zip(self.names, self.comps) if c}

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"HoloVectorField({self.to_text()!r})"


def bracket(X: HoloVectorField, Y: HoloVectorField) -> HoloVectorField:
    return X.bracket(Y)


def tangency_residuals(X: HoloVectorField, m: ModelSpec) -> list[SPoly]:
    """``(X + conj X)(w_j - conj w_j - Xi_j)`` restricted to the model.

    Each residual is a polynomial in ``z, zb, wb`` obtained by substituting
    ``w = wb + Xi(z, zb)``.
    """
    if (X.n, X.k) != (m.n, m.k):
        raise ValueError("field and model have different dimensions")
    n, k = m.n, m.k
    zs = z_names(n)
    zbs = [f"{z[0]}b{z[1:]}" for z in zs]
    wbs = [f"{w}b" for w in w_names(k)]
    names = tuple(zs + zbs + wbs)
    zz_pos = list(range(2 * n))
    xi = [p.embed(names, zz_pos) for p in m.xi]
    # images for holomorphic coefficients: z -> z, w -> wb + Xi
    hol = [SPoly.var(names, i) for i in range(n)]
    hol += [SPoly.var(names, 2 * n + l) + xi[l] for l in range(k)]
    # images for conjugated coefficients: z -> zb, w -> wb
    anti = [SPoly.var(names, n + i) for i in range(n)]
    anti += [SPoly.var(names, 2 * n + l) for l in range(k)]
    hol_c = [c.compose(hol) for c in X.comps]
    anti_c = [c.conj_coeffs().compose(anti) for c in X.comps]
    out = []
    for j in range(k):
        r = hol_c[n + j] - anti_c[n + j]
        for i in range(n):
            r = r - hol_c[i] * xi[j].diff(i) - anti_c[i] * xi[j].diff(n + i)
        out.append(r)
    return out


def verify_tangency(X: HoloVectorField, m: ModelSpec) -> bool:
    """True iff the real part of ``X`` is tangent to the model."""
    return all(r.is_zero() for r in tangency_residuals(X, m))


def real_span_rank(fields: Sequence[HoloVectorField]) -> int:
    from ..linalg import rank

    return rank(f.real_vector() for f in fields)


__all__ = ["HoloVectorField", "bracket", "field_names", "real_span_rank",
           "tangency_residuals", "verify_tangency"]
