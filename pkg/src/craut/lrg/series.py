"""Normal forms and truncated power-series solutions at the origin."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from ..gaussrat import GaussRat
from ..diffalg import LinDiffPoly
from ..diffalg.ring import Derivative
from .completion import CanonicalSystem, InconsistentSystemError, weighted_ops


def param_name(ring, d: Derivative) -> str:
    """Stable parameter label ``u[e1,...,em]`` (always with exponents)."""
    return f"{ring.name(d.indet)}[{','.join(map(str, d.op))}]"


class NormalForm:
    """Memoised normal form of derivatives modulo a canonical system.

    ``nf(d)`` is a polynomial in parametric derivatives only (plus a
    constant for inhomogeneous systems).
    """

    def __init__(self, G: CanonicalSystem):
        if G.inconsistent:
            raise InconsistentSystemError("system is inconsistent")
        self.system = G
        self.ring = G.ring
        self._red = G.reducer()
        self._memo: dict[Derivative, LinDiffPoly] = {}

    def is_parametric(self, d: Derivative) -> bool:
        return not self._red.is_reducible(d)

    def _deps(self, d: Derivative):
        hit = self._red.find(d)
        if hit is None:
            return None
        op, init, red, _, _ = hit
        theta = d.op.quotient(op)
        deps = []
        for e, c in red.terms.items():
            e2 = Derivative(e.indet, e.op * theta)
            if e2 != d:
                deps.append((e2, c))
        const = red.constant if theta.is_identity() else None
        return init, deps, const

    def nf(self, d: Derivative) -> LinDiffPoly:
        memo = self._memo
        if d in memo:
            return memo[d]
        stack = [d]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            info = self._deps(top)
            if info is None:
                memo[top] = LinDiffPoly.var(self.ring, top)
                stack.pop()
                continue
            init, deps, const = info
            missing = [e for e, _ in deps if e not in memo]
            if missing:
                stack.extend(missing)
                continue
            f = -init.inverse()
            acc = LinDiffPoly.const(self.ring, const * f) if const else LinDiffPoly.zero(self.ring)
            for e, c in deps:
                acc = acc.add_scaled(memo[e], c * f)
            memo[top] = acc
            stack.pop()
        return memo[d]

    def of(self, p: LinDiffPoly) -> LinDiffPoly:
        acc = LinDiffPoly.const(self.ring, p.constant)
        for d, c in p.terms.items():
            acc = acc.add_scaled(self.nf(d), c)
        return acc


@dataclass
class SeriesSolution:
    """Taylor coefficients ``coeffs[name][exps]`` as polynomials in parameters.

    The truncation keeps monomials whose (weighted) degree is at most
    ``order``; ``weights`` is ``None`` for the plain total degree.
    """

    ring: object
    order: int
    weights: tuple[int, ...] | None
    coeffs: dict[str, dict[tuple[int, ...], LinDiffPoly]]

    def degree(self, exps: Sequence[int]) -> int:
        if self.weights is None:
            return sum(exps)
        return sum(w * e for w, e in zip(self.weights, exps))

    def coefficient(self, name: str, exps: Sequence[int]) -> LinDiffPoly:
        return self.coeffs[name].get(tuple(exps), LinDiffPoly.zero(self.ring))

    def parameters(self) -> list[Derivative]:
        seen: set[Derivative] = set()
        for table in self.coeffs.values():
            for p in table.values():
                seen.update(p.terms)
        return sorted(seen, key=lambda d: (d.indet, d.order, tuple(-e for e in d.op)))

    def parameter_names(self) -> list[str]:
        return [param_name(self.ring, d) for d in self.parameters()]

    def as_text(self, name: str) -> str:
        """Human-readable expansion like ``v[0,0] + v[0,1]*y + 1/2*v[0,0]*y^2``."""
        ring = self.ring
        parts = []
        for exps, p in sorted(self.coeffs[name].items(),
                              key=lambda kv: (self.degree(kv[0]), tuple(-e for e in kv[0]))):
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(ring.derivations, exps) if e)
            for d, c in sorted(p.terms.items(), key=lambda kv: (kv[0].indet, kv[0].op)):
                parts.append((c, param_name(ring, d), mono))
            if p.constant:
                parts.append((p.constant, "", mono))
        if not parts:
            return "0"
        out = []
        for c, pn, mono in parts:
            factors = [f for f in (pn, mono) if f]
            body = "*".join(factors) or "1"
            if c == 1:
                out.append(f"+ {body}")
            elif c == -1:
                out.append(f"- {body}")
            elif c.is_real():
                sign = "-" if c.re < 0 else "+"
                out.append(f"{sign} {GaussRat(abs(c.re))}*{body}")
            else:
                out.append(f"+ ({c})*{body}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def check(self, G: CanonicalSystem) -> bool:
        """Substitute into every generator and confirm vanishing to the order."""
        ring = self.ring
        names = [u.name for u in ring.indeterminates]
        for g in G.generators:
            g_deg = max(self.degree(d.op) for d in g.terms) if g.terms else 0
            for gamma in weighted_ops(ring.m, self.order - g_deg, self.weights):
                acc = LinDiffPoly.const(ring, g.constant) if gamma.is_identity() else LinDiffPoly.zero(ring)
                for d, c in g.terms.items():
                    tot = gamma * d.op
                    scale = Fraction(prod(factorial(e) for e in tot),
                                     prod(factorial(e) for e in gamma))
                    if self.degree(tot) > self.order:
                        return False
                    coeff = self.coefficient(names[d.indet], tot)
                    acc = acc.add_scaled(coeff, c * scale)
                if not acc.is_zero():
                    return False
        return True

    def to_json(self) -> dict:
        out: dict[str, list] = {}
        for name, table in self.coeffs.items():
            rows = []
            for exps in sorted(table, key=lambda e: (self.degree(e), tuple(-x for x in e))):
                p = table[exps]
                for d, c in sorted(p.terms.items(), key=lambda kv: (kv[0].indet, kv[0].op)):
                    rows.append({"monomial": list(exps), "parameter": param_name(self.ring, d),
                                 "coefficient": str(c)})
                if p.constant:
                    rows.append({"monomial": list(exps), "parameter": None,
                                 "coefficient": str(p.constant)})
            out[name] = rows
        return out


def power_series_solution(G: CanonicalSystem, order: int,
                          weights: Sequence[int] | None = None,
                          unknowns: Sequence[str] | None = None,
                          nf: NormalForm | None = None) -> SeriesSolution:
    """Truncated Taylor expansion at the origin of the general solution.

    The coefficient of ``x^g`` in unknown ``u`` is ``NF(d^g u) / g!``.
    """
    if G.inconsistent:
        raise InconsistentSystemError("system is inconsistent")
    ring = G.ring
    nf = nf or NormalForm(G)
    names = unknowns if unknowns is not None else [u.name for u in ring.indeterminates]
    ops = weighted_ops(ring.m, order, weights)
    coeffs: dict[str, dict[tuple[int, ...], LinDiffPoly]] = {}
    for name in names:
        k = ring.index(name)
        table = {}
        for op in ops:
            p = nf.nf(Derivative(k, op))
            if p.is_zero():
                continue
            denom = prod(factorial(e) for e in op)
            table[tuple(op)] = p.scale(Fraction(1, denom)) if denom != 1 else p
        coeffs[name] = table
    return SeriesSolution(ring, order, tuple(weights) if weights else None, coeffs)


__all__ = ["NormalForm", "SeriesSolution", "param_name", "power_series_solution"]
