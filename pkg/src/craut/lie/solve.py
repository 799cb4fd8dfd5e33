"""End-to-end computation of the infinitesimal CR-automorphism algebra."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from ..cr.model import Bounds, ModelSpec, degree_bounds
from ..cr.tangency import TangencySystem, tangency_system
from ..diffalg.ring import Derivative
from ..errors import UnconvergedError
from ..gaussrat import GaussRat
from ..linalg import nullspace, rref_vectors
from ..lrg import CanonicalSystem, NormalForm, lrg, weighted_ops
from ..sparse import SPoly
from .fields import HoloVectorField, field_names, verify_tangency

log = logging.getLogger(__name__)


@dataclass
class LieAlgebraPresentation:
    """A real basis of vector fields plus optional structure data."""

    basis: list[HoloVectorField]
    weights: tuple[int, ...]
    model: ModelSpec | None = None
    structure: dict[tuple[int, int], dict[int, Fraction]] | None = None
    grading: dict[int, list[int]] | None = None
    info: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class SolveResult:
    algebra: LieAlgebraPresentation
    system: TangencySystem
    canonical: CanonicalSystem
    bounds: Bounds
    converged: bool | None
    dimension_next: int | None
    timings: dict[str, float]


def _realified_constraints(nf: NormalForm, pairs, col_of) -> list[dict]:
    """Rows of ``NF(d Ubar) - conj(NF(d U)) = 0`` split into real and imaginary parts.

    A complex parameter ``p`` has real columns ``(p, 0)`` and ``(p, 1)``.
    """
    rows = []
    for d, db in pairs:
        a = nf.nf(db)
        b = nf.nf(d)
        re: dict = {}
        im: dict = {}

        def put(row, key, v):
            if v:
                row[key] = row.get(key, 0) + v

        # a * p with p = x + i y
        for p, c in a.terms.items():
            x, y = col_of(p)
            put(re, x, c.re)
            put(re, y, -c.im)
            put(im, x, c.im)
            put(im, y, c.re)
        # - conj(b) * conj(p)
        for p, c in b.terms.items():
            x, y = col_of(p)
            put(re, x, -c.re)
            put(re, y, c.im)
            put(im, x, c.im)
            put(im, y, c.re)
        if a.constant or b.constant:
            raise ValueError("tangency systems are homogeneous")
        for row in (re, im):
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def _unknown_orders(ts: TangencySystem, w_bound: int):
    """Yield (unknown, op list) with each w-expansion cut at field degree w_bound."""
    cat = ts.catalog
    wts = ts.weights[ts.model.n:]
    for u in cat.unknowns:
        s = cat.shift(u, ts.weights)
        top = w_bound + s
        if top < 0:
            continue
        yield u, weighted_ops(ts.model.k, top, wts)


def solution_fields(ts: TangencySystem, G: CanonicalSystem, w_bound: int):
    """Real basis (as vector fields) of the truncated general solution."""
    m = ts.model
    n, k = m.n, m.k
    ring = ts.ring
    nf = NormalForm(G)
    plan = list(_unknown_orders(ts, w_bound))
    pairs = []
    for u, ops in plan:
        idx = ring.index(u.name)
        bidx = ring.partner(idx)
        for op in ops:
            pairs.append((Derivative(idx, op), Derivative(bidx, op)))
    params: dict[Derivative, int] = {}
    for d, db in pairs:
        for p in list(nf.nf(d).terms) + list(nf.nf(db).terms):
            if p not in params:
                params[p] = len(params)

    def col_of(p):
        i = params[p]
        return 2 * i, 2 * i + 1

    rows = _realified_constraints(nf, pairs, col_of)
    columns = list(range(2 * len(params)))
    kernel = nullspace(rows, columns)
    log.debug("%d parameters, %d real constraints, kernel %d", len(params), len(rows), len(kernel))
    names = field_names(n, k)
    fields = []
    for vec in kernel:
        val = {p: GaussRat(vec.get(2 * i, 0), vec.get(2 * i + 1, 0)) for p, i in params.items()}
        comps = [dict() for _ in names]
        for u, ops in plan:
            idx = ring.index(u.name)
            slot = (u.comp - 1) if u.kind == "Z" else (n + u.comp - 1)
            for op in ops:
                expr = nf.nf(Derivative(idx, op))
                c = GaussRat(0)
                for p, a in expr.terms.items():
                    c = c + a * val[p]
                if not c:
                    continue
                c = c / prod(factorial(e) for e in op)
                mono = tuple(u.alpha) + tuple(op)
                comps[slot][mono] = comps[slot].get(mono, GaussRat(0)) + c
        fields.append(HoloVectorField(n, k, [SPoly(names, t) for t in comps]))
    return fields, {"parameters": len(params), "constraints": len(rows)}


def graded_basis(fields: Sequence[HoloVectorField], weights: Sequence[int],
                 max_degree: int | None = None) -> list[HoloVectorField]:
    """Homogeneous components of the span, in reduced form, lowest degree first."""
    by_deg: dict[int, list[HoloVectorField]] = {}
    for f in fields:
        for d, part in f.homogeneous_parts(weights).items():
            if max_degree is None or d <= max_degree:
                by_deg.setdefault(d, []).append(part)
    out = []
    for d in sorted(by_deg):
        vecs = [p.real_vector() for p in by_deg[d]]
        cols = sorted({c for v in vecs for c in v}, key=_col_order)
        for v in rref_vectors(vecs, cols):
            X = HoloVectorField.from_real_vector(by_deg[d][0].n, by_deg[d][0].k, v)
            out.append(X)
    return out


def _col_order(c):
    v, e, part = c
    # derivations in w before z, lower monomials first, real before imaginary
    return (-v, tuple(e), part)


def _dimension(m: ModelSpec, b: Bounds, ranking: str, blocks) -> tuple:
    ts = tangency_system(m, b)
    r = ts.ranking(ranking, blocks)
    G = lrg(ts.equations, r)
    fields, info = solution_fields(ts, G, b.w_bound)
    return ts, G, fields, info


def solve_autcr(m: ModelSpec, bounds: Bounds | None = None, stabilize: bool = True,
                ranking: str = "orderly", blocks=None, strict: bool = False) -> SolveResult:
    """Compute a real basis of the tangent holomorphic fields.

    With ``stabilize`` the computation is repeated with every bound raised
    by one and the dimensions compared; ``strict`` turns a mismatch into an
    :class:`UnconvergedError`.
    """
    if bounds is None:
        bounds = degree_bounds(m)[0]
    weights = (1,) * m.n + m.weights
    timings = {}
    t0 = time.perf_counter()
    ts = tangency_system(m, bounds)
    timings["tangency"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    r = ts.ranking(ranking, blocks)
    G = lrg(ts.equations, r)
    timings["lrg"] = time.perf_counter() - t0
    if G.inconsistent:
        raise ValueError("tangency system is inconsistent")
    t0 = time.perf_counter()
    fields, info = solution_fields(ts, G, bounds.w_bound)
    basis = graded_basis(fields, weights, bounds.w_bound)
    timings["solve"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    bad = [i for i, X in enumerate(basis) if not verify_tangency(X, m)]
    timings["verify"] = time.perf_counter() - t0
    if bad:
        raise AssertionError(f"basis fields {bad} fail the tangency check")
    info.update({"equations": len(ts.equations), "unknowns": len(ts.catalog),
                 "generators": len(G.generators)})
    alg = LieAlgebraPresentation(basis, weights, m, info=info)
    converged = dim_next = None
    if stabilize:
        t0 = time.perf_counter()
        big = bounds.raised(1)
        _, _, f2, _ = _dimension(m, big, ranking, blocks)
        dim_next = len(graded_basis(f2, weights, big.w_bound))
        converged = dim_next == len(basis)
        timings["stabilize"] = time.perf_counter() - t0
        if not converged and strict:
            raise UnconvergedError(len(basis), dim_next)
    return SolveResult(alg, ts, G, bounds, converged, dim_next, timings)
