"""Strategies and property checks shared by the property suites.

Each check bumps ``COUNTS[name]`` so the acceptance run can confirm how many
randomized cases were exercised.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from hypothesis import strategies as st

from craut.diffalg import DerivationOp, Derivative, DiffRing, LinDiffPoly, Ranking
from craut.diffalg.reduction import Reducer
from craut.gaussrat import GaussRat
from craut.lie.fields import HoloVectorField, field_names
from craut.lrg import delta_polynomial, ideal_membership, is_confluent, lrg
from craut.sparse import SPoly

COUNTS: Counter = Counter()

COEFFS = [GaussRat(1), GaussRat(-1), GaussRat(2), GaussRat(0, 1), GaussRat(0, -1),
          GaussRat(1, 1), GaussRat(Fraction(1, 2)), GaussRat(0, Fraction(-2, 3))]
coeffs = st.sampled_from(COEFFS)


@st.composite
def rings(draw):
    nu = draw(st.integers(1, 3))
    m = draw(st.integers(1, 2))
    names = ["u", "v", "s"][:nu]
    conj = draw(st.lists(st.booleans(), min_size=nu, max_size=nu))
    return DiffRing(names, ["x", "y"][:m], conj)


@st.composite
def rankings(draw, ring):
    primary = [u.name for u in ring.indeterminates if not u.is_barred]
    order = draw(st.permutations(primary))
    kind = draw(st.sampled_from(["orderly", "elimination"]))
    return Ranking(ring, kind, list(order))


def ops(m, max_order=2):
    return st.lists(st.integers(0, max_order), min_size=m, max_size=m).filter(
        lambda e: sum(e) <= max_order).map(DerivationOp)


@st.composite
def polys(draw, ring, max_terms=3, max_order=2, constant=False):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        k = draw(st.integers(0, len(ring.indeterminates) - 1))
        d = Derivative(k, draw(ops(ring.m, max_order)))
        terms[d] = terms.get(d, GaussRat(0)) + draw(coeffs)
    terms = {d: c for d, c in terms.items() if c}
    const = draw(coeffs) if constant and draw(st.integers(0, 9)) == 0 else GaussRat(0)
    p = LinDiffPoly._make(ring, terms, const)
    if p.is_zero():
        d = Derivative(0, DerivationOp.identity(ring.m))
        p = LinDiffPoly.var(ring, d)
    return p


@st.composite
def systems(draw, max_polys=3):
    ring = draw(rings())
    r = draw(rankings(ring))
    sigma = draw(st.lists(polys(ring), min_size=1, max_size=max_polys))
    return ring, r, sigma


# -- checks -------------------------------------------------------------------

def check_certificate(ring, r, p, Q, extended):
    COUNTS["certificate"] += 1
    rem, cert = Reducer(Q, r, extended=extended).reduce(p)
    if cert.inconsistent:
        assert rem.is_zero()
        return
    assert p - rem == cert.replay(ring)
    for s in cert:
        base = s.q.bar() if s.conjugate else s.q
        assert s.q in Q
        assert base.derive(s.theta).leader(r) is not None


def _reducible(d: Derivative, Q, r) -> bool:
    for q in Q:
        if q.is_constant():
            continue
        ld = q.leader(r)
        if ld.indet == d.indet and ld.op.divides(d.op):
            return True
    return False


def check_irreducible(ring, r, p, Q):
    COUNTS["irreducible"] += 1
    rem, cert = Reducer(Q, r, extended=True).reduce(p)
    closed = list(Q) + [q.bar() for q in Q]
    assert not any(_reducible(d, closed, r) for d in rem.terms)


def check_delta(ring, r, p1, p2):
    COUNTS["delta"] += 1
    l1, l2 = p1.leader(r), p2.leader(r)
    if l1.indet != l2.indet:
        return
    h = delta_polynomial(p1, p2, r)
    top = Derivative(l1.indet, l1.op.lcm(l2.op))
    assert top not in h.terms
    assert all(r.compare(d, top) < 0 for d in h.terms)


def check_lrg(ring, r, sigma):
    COUNTS["lrg"] += 1
    G = lrg(sigma, r)
    if G.inconsistent:
        assert any(p.is_constant() for p in sigma) or len(G) == 1
        return G
    assert is_confluent(G)
    red = G.reducer()
    for p in sigma:
        assert red.reduce(p)[0].is_zero()
        assert red.reduce(p.bar())[0].is_zero()
    # the canonical representative does not depend on the pair strategy
    assert lrg(sigma, r, strategy="fifo").generators == G.generators
    return G


def check_membership(ring, r, sigma, combo):
    COUNTS["membership"] += 1
    G = lrg(sigma, r)
    if G.inconsistent:
        return
    p = LinDiffPoly.zero(ring)
    for (idx, op, conj, c) in combo:
        q = sigma[idx % len(sigma)]
        q = q.bar() if conj else q
        p = p.add_scaled(q.derive(op), c)
    assert ideal_membership(p, G)


def check_bar(ring, p, q, op, c):
    COUNTS["bar"] += 1
    assert p.bar().bar() == p
    assert p.derive(op).bar() == p.bar().derive(op)
    assert (p + q).bar() == p.bar() + q.bar()
    assert p.scale(c).bar() == p.bar().scale(c.conj())


@st.composite
def vector_fields(draw, n=1, k=2, max_deg=2):
    names = field_names(n, k)
    comps = []
    for _ in names:
        terms = {}
        for _ in range(draw(st.integers(0, 3))):
            e = tuple(draw(st.lists(st.integers(0, max_deg), min_size=n + k, max_size=n + k)))
            terms[e] = draw(coeffs)
        comps.append(SPoly(names, terms))
    return HoloVectorField(n, k, comps)


def check_bracket(X, Y, Z, a):
    COUNTS["bracket"] += 1
    assert X.bracket(Y) == -(Y.bracket(X))
    assert X.bracket(X).is_zero()
    jac = X.bracket(Y.bracket(Z)) + Y.bracket(Z.bracket(X)) + Z.bracket(X.bracket(Y))
    assert jac.is_zero()
    # bilinearity over real scalars
    assert X.scale(a).bracket(Y) == X.bracket(Y).scale(a)


def check_grading(basis, weights, layers, d1, d2, c1, c2):
    """A random element of g_d1 bracketed with one of g_d2 lies in g_{d1+d2}."""
    from craut.linalg import Echelon

    COUNTS["grading"] += 1
    X = _combo(basis, layers[d1], c1)
    Y = _combo(basis, layers[d2], c2)
    Zb = X.bracket(Y)
    if Zb.is_zero():
        return
    assert Zb.degrees(weights) == {d1 + d2}
    target = layers.get(d1 + d2, [])
    ech = Echelon()
    for i in target:
        ech.add(basis[i].real_vector())
    assert ech.contains(Zb.real_vector())


def _combo(basis, idx, cs):
    out = None
    for i, c in zip(idx, itertools.cycle(cs)):
        t = basis[i].scale(c)
        out = t if out is None else out + t
    return out
