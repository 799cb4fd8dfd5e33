"""The linear PDE system expressing tangency of ``X + conj(X)`` to a rigid model.

For a holomorphic field ``X = sum Z^i d/dz_i + sum W^l d/dw_l`` with
``Z^i = sum_b z^b Z^{i,b}(w)`` and ``W^l = sum_b z^b W^{l,b}(w)``, applying
``X + conj(X)`` to ``w_j - conj(w_j) - Xi_j`` and substituting
``w = wbar + Xi`` gives

    sum_b z^b W^{j,b}(wbar + Xi) - sum_a zbar^a Wbar^{j,a}(wbar)
      - sum_i sum_b z^b dXi_j/dz_i  Z^{i,b}(wbar + Xi)
      - sum_i sum_a zbar^a dXi_j/dzbar_i  Zbar^{i,a}(wbar),

and the shifted coefficients expand as ``U(wbar + Xi) = sum_g Xi^g/g! d^g U``.
Each coefficient of ``z^mu zbar^nu`` is one linear PDE in ``w``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from ..diffalg import DiffRing, LinDiffPoly, Ranking
from ..diffalg.ring import DerivationOp, Derivative
from ..gaussrat import GaussRat
from ..lrg.completion import weighted_ops
from ..sparse import SPoly
from .model import Bounds, ModelSpec, XiTable, degree_bounds, w_names, zz_names

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Unknown:
    kind: str  # "Z" or "W"
    comp: int  # 1-based component i (for Z) or l (for W)
    alpha: tuple[int, ...]  # z-exponent of the Taylor coefficient
    name: str

    @property
    def zdeg(self) -> int:
        return sum(self.alpha)


def unknown_name(kind: str, comp: int, alpha: Sequence[int], n: int) -> str:
    if n == 1:
        return f"Z{alpha[0]}" if kind == "Z" else f"W{comp}_{alpha[0]}"
    tail = "_".join(map(str, alpha))
    return f"Z{comp}_{tail}" if kind == "Z" else f"W{comp}_{tail}"


def multi_indices(n: int, max_deg: int) -> list[tuple[int, ...]]:
    out = [a for a in itertools.product(range(max_deg + 1), repeat=n) if sum(a) <= max_deg]
    out.sort(key=lambda a: (sum(a), tuple(-x for x in a)))
    return out


class UnknownCatalog:
    """Taylor coefficients Z^{i,a}(w), W^{l,b}(w) and the ring they generate.

    Every unknown has a barred partner.  Derivations are ``w1..wk``.  The
    ranking blocks follow catalog order: all Z's, then all W's.
    """

    def __init__(self, n: int, k: int, unknowns: Sequence[Unknown]):
        self.n = n
        self.k = k
        self.unknowns: tuple[Unknown, ...] = tuple(unknowns)
        names = [u.name for u in self.unknowns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate unknown names")
        self.ring = DiffRing(names, w_names(k), conjugates=True)
        self._by_key = {(u.kind, u.comp, u.alpha): u for u in self.unknowns}

    @classmethod
    def from_bounds(cls, m: ModelSpec, b: Bounds, drop: set[str] = frozenset()) -> UnknownCatalog:
        us = []
        for i in range(1, m.n + 1):
            for a in multi_indices(m.n, b.z_bound_z):
                nm = unknown_name("Z", i, a, m.n)
                if nm not in drop:
                    us.append(Unknown("Z", i, a, nm))
        for l in range(1, m.k + 1):
            for a in multi_indices(m.n, b.z_bound_w[l - 1]):
                nm = unknown_name("W", l, a, m.n)
                if nm not in drop:
                    us.append(Unknown("W", l, a, nm))
        return cls(m.n, m.k, us)

    def get(self, kind: str, comp: int, alpha: Sequence[int]) -> Unknown | None:
        return self._by_key.get((kind, comp, tuple(alpha)))

    def index(self, u: Unknown) -> int:
        return self.ring.index(u.name)

    def ranking(self, kind: str = "orderly", blocks=None) -> Ranking:
        return Ranking(self.ring, kind, blocks)

    def shift(self, u: Unknown, weights: Sequence[int]) -> int:
        """``weight(var) - |alpha|``: extra w-weight allowed past the field-degree bound."""
        var_wt = 1 if u.kind == "Z" else weights[self.n + u.comp - 1]
        return var_wt - u.zdeg

    def names(self) -> list[str]:
        return [u.name for u in self.unknowns]

    def __len__(self):
        return len(self.unknowns)


@dataclass
class TangencySystem:
    model: ModelSpec
    bounds: Bounds
    catalog: UnknownCatalog
    weights: tuple[int, ...]
    index: dict[tuple[int, tuple, tuple], LinDiffPoly]
    forced_zero: tuple[str, ...] = ()
    unresolved: tuple[str, ...] = ()
    notes: list[str] = field(default_factory=list)

    @property
    def ring(self) -> DiffRing:
        return self.catalog.ring

    @property
    def equations(self) -> list[LinDiffPoly]:
        return [p for p in self.index.values() if not p.is_zero()]

    def equation(self, j: int, mu: Sequence[int], nu: Sequence[int]) -> LinDiffPoly:
        """Coefficient of ``z^mu zbar^nu`` in defining equation ``j`` (1-based)."""
        return self.index.get((j, tuple(mu), tuple(nu)), LinDiffPoly.zero(self.ring))

    def ranking(self, kind: str = "orderly", blocks=None) -> Ranking:
        return self.catalog.ranking(kind, blocks)


def _gamma_products(xi: XiTable, max_deg: int) -> dict[tuple, SPoly]:
    """``Xi^g / g!`` truncated at total degree ``max_deg`` for all useful g."""
    m = xi.model
    mins = m.min_degrees
    out: dict[tuple, SPoly] = {}
    for g in weighted_ops(m.k, max_deg, mins):
        g = tuple(g)
        if not any(g):
            out[g] = SPoly.const(zz_names(m.n), 1)
            continue
        k = next(i for i, x in enumerate(g) if x)
        prev = list(g)
        prev[k] -= 1
        base = out[tuple(prev)] * m.xi[k]
        base = SPoly._make(base.names, {e: c for e, c in base.terms.items() if sum(e) <= max_deg})
        out[g] = base.scale(Fraction(1, g[k]))
    return {g: p for g, p in out.items() if p}


def _emit(m: ModelSpec, cat: UnknownCatalog, w_bound: int) -> dict:
    """Raw coefficient tables, keyed (j, mu, nu) -> {Derivative: GaussRat}."""
    n, k = m.n, m.k
    xi = XiTable(m)
    weights = m.weights
    ring = cat.ring
    max_n = w_bound + max(weights)
    E = _gamma_products(xi, max_n)
    zero_op = DerivationOp.identity(k)
    out: dict[tuple, dict] = {}

    def add(j, e, d, c):
        key = (j, tuple(e[:n]), tuple(e[n:]))
        row = out.setdefault(key, {})
        s = row.get(d)
        row[d] = c if s is None else s + c

    for j in range(1, k + 1):
        xj = m.xi[j - 1]
        nj = w_bound + weights[j - 1]
        dz = [xj.diff(i) for i in range(n)]
        dzb = [xj.diff(n + i) for i in range(n)]
        for u in cat.unknowns:
            a = u.alpha
            idx = ring.index(u.name)
            bidx = ring.partner(idx)
            if u.kind == "W" and u.comp == j:
                # sum_b z^b W^{j,b}(wbar + Xi)
                for g, Eg in E.items():
                    d = Derivative(idx, DerivationOp(g))
                    for e, c in Eg.terms.items():
                        e2 = tuple(x + (a[t] if t < n else 0) for t, x in enumerate(e))
                        if sum(e2) <= nj:
                            add(j, e2, d, c)
                # - sum_a zbar^a Wbar^{j,a}(wbar)
                if u.zdeg <= nj:
                    add(j, (0,) * n + a, Derivative(bidx, zero_op), GaussRat(-1))
            elif u.kind == "Z":
                i = u.comp - 1
                # - z^b dXi_j/dz_i Z^{i,b}(wbar + Xi)
                for g, Eg in E.items():
                    prodp = dz[i] * Eg
                    if not prodp:
                        continue
                    d = Derivative(idx, DerivationOp(g))
                    for e, c in prodp.terms.items():
                        e2 = tuple(x + (a[t] if t < n else 0) for t, x in enumerate(e))
                        if sum(e2) <= nj:
                            add(j, e2, d, -c)
                # - zbar^a dXi_j/dzbar_i Zbar^{i,a}(wbar)
                d = Derivative(bidx, zero_op)
                for e, c in dzb[i].terms.items():
                    e2 = tuple(x + (a[t - n] if t >= n else 0) for t, x in enumerate(e))
                    if sum(e2) <= nj:
                        add(j, e2, d, -c)
    return out


def _to_polys(raw: dict, ring: DiffRing) -> dict:
    res = {}
    for key in sorted(raw, key=lambda t: (t[0], sum(t[1]) + sum(t[2]), t[1], t[2])):
        row = {d: c for d, c in raw[key].items() if c}
        res[key] = LinDiffPoly._make(ring, row, GaussRat(0))
    return res


def raw_tangency_system(m: ModelSpec, bounds: Bounds, drop: set[str] = frozenset()) -> TangencySystem:
    """Emit every coefficient equation for the catalog fixed by ``bounds``.

    Equation ``j`` is expanded up to total (z, zbar)-degree
    ``w_bound + weight(w_j)``, which covers every field of grading degree at
    most ``w_bound``.
    """
    cat = UnknownCatalog.from_bounds(m, bounds, drop)
    weights = (1,) * m.n + m.weights
    raw = _emit(m, cat, bounds.w_bound)
    return TangencySystem(m, bounds, cat, weights, _to_polys(raw, cat.ring))


@dataclass
class TruncationReport:
    forced_zero: tuple[str, ...]
    unresolved: tuple[str, ...]
    kept: tuple[str, ...]

    def vanishing(self, kind: str | None = None) -> list[str]:
        return [u for u in self.forced_zero if kind is None or u.startswith(kind)]


def truncation_lemma(m: ModelSpec, bounds: Bounds) -> TruncationReport:
    """Find unknowns forced to vanish, working at bounds + 1.

    An equation whose only surviving term is an order-zero unknown forces
    that unknown (and its conjugate) to vanish identically; substitution is
    repeated until nothing changes.  Unknowns beyond ``bounds`` that are not
    forced to vanish are reported as unresolved.
    """
    big = Bounds(bounds.z_bound_z + 1, tuple(b + 1 for b in bounds.z_bound_w), bounds.w_bound)
    ts = raw_tangency_system(m, big)
    ring = ts.ring
    zero: set[int] = set()
    eqs = [p for p in ts.index.values() if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        for p in eqs:
            live = [(d, c) for d, c in p.terms.items() if d.indet not in zero]
            if len(live) == 1 and live[0][0].op.is_identity():
                u = live[0][0].indet
                zero.add(u)
                zero.add(ring.partner(u))
                changed = True
        if changed:
            eqs = [p for p in eqs if any(d.indet not in zero for d in p.terms)]
    forced = [u.name for u in ts.catalog.unknowns if ring.index(u.name) in zero]
    beyond = [u for u in ts.catalog.unknowns
              if (u.kind == "Z" and u.zdeg > bounds.z_bound_z)
              or (u.kind == "W" and u.zdeg > bounds.z_bound_w[u.comp - 1])]
    unresolved = [u.name for u in beyond if u.name not in forced]
    kept = [u.name for u in ts.catalog.unknowns
            if u.name not in forced and u not in beyond]
    return TruncationReport(tuple(forced), tuple(unresolved), tuple(kept))


def tangency_system(m: ModelSpec, bounds: Bounds | None = None,
                    apply_lemma: bool = True) -> TangencySystem:
    """Tangency PDE system over the catalog left after the truncation lemma."""
    if bounds is None:
        bounds = degree_bounds(m)[0]
    if not apply_lemma:
        return raw_tangency_system(m, bounds)
    rep = truncation_lemma(m, bounds)
    full = UnknownCatalog.from_bounds(m, bounds)
    drop = {u.name for u in full.unknowns if u.name not in rep.kept}
    ts = raw_tangency_system(m, bounds, drop)
    ts.forced_zero = rep.forced_zero
    ts.unresolved = rep.unresolved
    if rep.unresolved:
        ts.notes.append("unknowns beyond the z-bounds not forced to vanish: "
                        + ", ".join(rep.unresolved))
        log.warning(ts.notes[-1])
    return ts


def shift_factorial(g: Sequence[int]) -> int:
    return prod(factorial(x) for x in g)
