"""Completion of linear systems into canonical form (LRG)."""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..diffalg import LinDiffPoly, Ranking, Reducer, extended_ritt_reduce
from ..diffalg.ring import DerivationOp, Derivative, derivation_ops

log = logging.getLogger(__name__)


class InconsistentSystemError(ValueError):
    """The system has no solutions (a nonzero constant lies in its ideal)."""


def delta_polynomial(p1: LinDiffPoly, p2: LinDiffPoly, r: Ranking) -> LinDiffPoly:
    """Cross-derivative of two polynomials whose leaders share an indeterminate.

    Returns ``lc(p2)*(l/t1)p1 - lc(p1)*(l/t2)p2`` with ``l = lcm(t1, t2)``,
    or zero when the leaders involve different indeterminates.
    """
    d1, d2 = p1.leader(r), p2.leader(r)
    if d1.indet != d2.indet:
        return LinDiffPoly.zero(p1.ring)
    lcm = d1.op.lcm(d2.op)
    a = p1.derive(lcm.quotient(d1.op)).scale(p2.terms[d2])
    b = p2.derive(lcm.quotient(d2.op)).scale(p1.terms[d1])
    return a - b


@dataclass
class CompletionStats:
    pairs: int = 0
    zero_pairs: int = 0
    polys: int = 0
    removed: int = 0
    max_size: int = 0


@dataclass(frozen=True)
class CanonicalSystem:
    """Autoreduced, monic, rank-sorted generators of a differential ideal."""

    generators: tuple[LinDiffPoly, ...]
    ranking: Ranking
    inconsistent: bool = False
    stats: CompletionStats = field(default_factory=CompletionStats, compare=False)

    @property
    def ring(self):
        return self.ranking.ring

    def reducer(self) -> Reducer:
        # generators are closed under bar, so plain reduction suffices
        return Reducer(self.generators, self.ranking, extended=True)

    def leaders(self) -> list[Derivative]:
        return [g.leader(self.ranking) for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _sorted_by_rank(polys: Iterable[LinDiffPoly], r: Ranking) -> list[LinDiffPoly]:
    return sorted(polys, key=lambda p: (r.key(p.leader(r)), p.to_text(r)))


def lrg(sigma: Iterable[LinDiffPoly], r: Ranking, strategy: str = "normal",
        autoreduce: bool = True) -> CanonicalSystem:
    """Complete ``sigma`` so that all cross-derivatives reduce to zero.

    The working basis is kept closed under bar by inserting ``bar(g)``
    alongside every new ``g``; pairs are formed between generators whose
    leaders share an indeterminate.  ``strategy`` is ``"normal"`` (lowest
    least common derivative first) or ``"fifo"``.
    """
    if strategy not in ("normal", "fifo"):
        raise ValueError(f"unknown strategy {strategy!r}")
    ring = r.ring
    stats = CompletionStats()
    inputs = [p for p in sigma if not p.is_zero()]
    for p in inputs:
        if p.ring != ring:
            from ..diffalg import SignatureError

            raise SignatureError("input polynomial is over a different ring")
    if any(p.is_constant() for p in inputs):
        return CanonicalSystem((LinDiffPoly.const(ring, 1),), r, True, stats)

    red = Reducer((), r)
    alive: dict[int, LinDiffPoly] = {}
    leader_of: dict[int, Derivative] = {}
    by_indet: dict[int, list[int]] = {}
    counter = itertools.count()
    ids = itertools.count()
    heap: list = []

    def push(prio, item):
        if strategy == "fifo":
            prio = ()
        heapq.heappush(heap, (prio, next(counter), item))

    seen: set[LinDiffPoly] = set()
    for p in _sorted_by_rank(inputs, r):
        for q in (p, p.bar()):
            if q not in seen:
                seen.add(q)
                push(r.key(q.leader(r)), ("poly", q))

    def insert(g: LinDiffPoly):
        ld = g.leader(r)
        # drop generators made redundant by the new leader
        for gid in list(by_indet.get(ld.indet, ())):
            old_ld = leader_of[gid]
            if ld.op.divides(old_ld.op):
                old = alive.pop(gid)
                by_indet[ld.indet].remove(gid)
                del leader_of[gid]
                red.remove(old)
                stats.removed += 1
                push(r.key(old_ld), ("poly", old))
        gid = next(ids)
        for oid in by_indet.get(ld.indet, ()):
            lcm = Derivative(ld.indet, ld.op.lcm(leader_of[oid].op))
            push(r.key(lcm), ("pair", oid, gid))
        alive[gid] = g
        leader_of[gid] = ld
        by_indet.setdefault(ld.indet, []).append(gid)
        red.add(g)
        stats.max_size = max(stats.max_size, len(alive))

    while heap:
        _, _, item = heapq.heappop(heap)
        if item[0] == "pair":
            _, a, b = item
            if a not in alive or b not in alive:
                continue
            stats.pairs += 1
            p = delta_polynomial(alive[a], alive[b], r)
        else:
            stats.polys += 1
            p = item[1]
        rem, _ = red.reduce(p, certificate=False)
        if rem.is_zero():
            if item[0] == "pair":
                stats.zero_pairs += 1
            continue
        if rem.is_constant():
            log.debug("inconsistency detected")
            return CanonicalSystem((LinDiffPoly.const(ring, 1),), r, True, stats)
        rem = rem.monic(r)
        insert(rem)
        rb = rem.bar().monic(r)
        if rb != rem:
            rb2, _ = red.reduce(rb, certificate=False)
            if not rb2.is_zero():
                if rb2.is_constant():
                    return CanonicalSystem((LinDiffPoly.const(ring, 1),), r, True, stats)
                insert(rb2.monic(r))
    gens = list(alive.values())
    if autoreduce:
        gens = autoreduce_set(gens, r)
    else:
        gens = _sorted_by_rank(gens, r)
    log.debug("lrg: %d generators, %s", len(gens), stats)
    return CanonicalSystem(tuple(gens), r, False, stats)


def autoreduce_set(gens: Sequence[LinDiffPoly], r: Ranking) -> list[LinDiffPoly]:
    """Minimal leaders, tails reduced by the others, monic, sorted by rank."""
    gens = [g.monic(r) for g in gens if not g.is_zero()]
    lds = [g.leader(r) for g in gens]
    keep: list[LinDiffPoly] = []
    for i, g in enumerate(gens):
        li = lds[i]
        redundant = False
        for j, lj in enumerate(lds):
            if j == i or lj.indet != li.indet or not lj.op.divides(li.op):
                continue
            if lj != li or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = Reducer([h for j, h in enumerate(keep) if j != i], r)
        ld = g.leader(r)
        tail = LinDiffPoly._make(g.ring, {d: c for d, c in g.terms.items() if d != ld},
                                 g.constant)
        t, _ = others.reduce(tail, certificate=False)
        out.append(t.add_scaled(LinDiffPoly.var(g.ring, ld), g.terms[ld]).monic(r))
    return _sorted_by_rank(out, r)


def ideal_membership(p: LinDiffPoly, G: CanonicalSystem) -> bool:
    """True iff ``p`` extended-reduces to zero over the completed system."""
    if G.inconsistent:
        return True
    rem, _ = extended_ritt_reduce(p, G.generators, G.ranking)
    return rem.is_zero()


def is_confluent(G: CanonicalSystem) -> bool:
    """Check that every cross-derivative in ``G`` and ``bar(G)`` reduces to zero."""
    r = G.ranking
    red = G.reducer()
    pool = list(G.generators) + [g.bar().monic(r) for g in G.generators]
    for a, b in itertools.combinations(pool, 2):
        d = delta_polynomial(a, b, r)
        if d and not red.reduce(d, certificate=False)[0].is_zero():
            return False
    return True


def parametric_derivatives(G: CanonicalSystem, order_bound: int,
                           weights: Sequence[int] | None = None) -> list[Derivative]:
    """Derivatives not under any leader, up to ``order_bound``.

    With ``weights`` the bound applies to the weighted order
    ``sum(w_k * e_k)`` instead of the plain order.
    """
    r = G.ranking
    ring = r.ring
    red = G.reducer()
    out = []
    for op in weighted_ops(ring.m, order_bound, weights):
        for k in range(len(ring)):
            d = Derivative(k, op)
            if not red.is_reducible(d):
                out.append(d)
    out.sort(key=r.key)
    return out


def weighted_ops(m: int, bound: int, weights: Sequence[int] | None = None) -> list[DerivationOp]:
    """Operators with (weighted) order at most ``bound``."""
    if weights is None:
        return derivation_ops(m, bound)
    if len(weights) != m or any(w <= 0 for w in weights):
        raise ValueError("weights must be positive, one per derivation")
    out: list[DerivationOp] = []

    def rec(prefix: list[int], k: int, left: int):
        if k == m:
            out.append(DerivationOp(prefix))
            return
        for e in range(left // weights[k] + 1):
            rec(prefix + [e], k + 1, left - e * weights[k])

    rec([], 0, bound)
    out.sort(key=lambda op: (sum(w * e for w, e in zip(weights, op)), tuple(-e for e in op)))
    return out
