"""Ritt reduction and its bar-extended variant for linear polynomials."""

from __future__ import annotations

import heapq
from typing import Iterable, NamedTuple

from ..gaussrat import GaussRat
from .poly import LinDiffPoly
from .ranking import Ranking
from .ring import DerivationOp, Derivative


class Step(NamedTuple):
    """One reduction step: ``coeff * theta(q)`` (or of ``bar(q)``) was removed."""

    q: LinDiffPoly
    theta: DerivationOp
    coeff: GaussRat
    conjugate: bool = False

    def term(self) -> LinDiffPoly:
        base = self.q.bar() if self.conjugate else self.q
        return base.derive(self.theta).scale(self.coeff)


class Certificate(list):
    """List of :class:`Step`; ``inconsistent`` is set when Q holds a nonzero constant."""

    inconsistent: bool = False

    def replay(self, ring) -> LinDiffPoly:
        acc = LinDiffPoly.zero(ring)
        for s in self:
            acc = acc + s.term()
        return acc


class Reducer:
    """Precomputed lookup of reductors by leader, reusable across many calls.

    Each entry is ``(reductor, original q, conjugate flag)``; when several
    reductors share a leader's indeterminate the first that applies wins, so
    Q entries are tried before their bars.
    """

    def __init__(self, Q: Iterable[LinDiffPoly], r: Ranking, extended: bool = False):
        self.ranking = r
        self.inconsistent = False
        self._by_indet: dict[int, list[tuple[DerivationOp, GaussRat, LinDiffPoly, LinDiffPoly, bool]]] = {}
        qs = [q for q in Q if not q.is_zero()]
        for q in qs:
            if q.is_constant():
                self.inconsistent = True
        if self.inconsistent:
            return
        for q in qs:
            self.add(q)
        if extended:
            for q in qs:
                self.add(q.bar(), q, True)

    def add(self, red: LinDiffPoly, orig: LinDiffPoly | None = None, conj: bool = False):
        """Register a reductor; a nonzero constant makes the set inconsistent."""
        if red.is_zero():
            return
        if red.is_constant():
            self.inconsistent = True
            return
        ld = red.leader(self.ranking)
        self._by_indet.setdefault(ld.indet, []).append(
            (ld.op, red.terms[ld], red, red if orig is None else orig, conj))

    def remove(self, red: LinDiffPoly):
        ld = red.leader(self.ranking)
        lst = self._by_indet.get(ld.indet, [])
        self._by_indet[ld.indet] = [e for e in lst if e[2] is not red]

    def reductors(self) -> list[LinDiffPoly]:
        return [e[2] for lst in self._by_indet.values() for e in lst]

    def find(self, d: Derivative):
        for op, init, red, orig, conj in self._by_indet.get(d.indet, ()):
            if op.divides(d.op):
                return op, init, red, orig, conj
        return None

    def is_reducible(self, d: Derivative) -> bool:
        return self.find(d) is not None

    def reduce(self, p: LinDiffPoly, certificate: bool = True) -> tuple[LinDiffPoly, Certificate]:
        cert = Certificate()
        ring = p.ring
        if self.inconsistent:
            cert.inconsistent = True
            return LinDiffPoly.zero(ring), cert
        key = self.ranking.key
        work = dict(p.terms)
        heap = [(tuple(-x for x in key(d)), d) for d in work]
        heapq.heapify(heap)
        queued = set(work)
        rem: dict[Derivative, GaussRat] = {}
        const = p.constant
        while heap:
            _, d = heapq.heappop(heap)
            queued.discard(d)
            c = work.pop(d, None)
            if c is None:
                continue
            hit = self.find(d)
            if hit is None:
                rem[d] = c
                continue
            op, init, red, orig, conj = hit
            theta = d.op.quotient(op)
            f = c / init
            if certificate:
                cert.append(Step(orig, theta, f, conj))
            if red.constant and theta.is_identity():
                const = const - red.constant * f
            for e, v in red.terms.items():
                e2 = Derivative(e.indet, e.op * theta)
                if e2 == d:
                    continue
                s = work.get(e2)
                nv = -(v * f)
                if s is None:
                    work[e2] = nv
                    if e2 not in queued:
                        queued.add(e2)
                        heapq.heappush(heap, (tuple(-x for x in key(e2)), e2))
                else:
                    s = s + nv
                    if s:
                        work[e2] = s
                    else:
                        del work[e2]
        return LinDiffPoly._make(ring, rem, const), cert


def ritt_reduce(p: LinDiffPoly, Q: Iterable[LinDiffPoly], r: Ranking):
    """Ritt reduction of ``p`` by ``Q``: returns ``(remainder, certificate)``."""
    return Reducer(Q, r, extended=False).reduce(p)


def extended_ritt_reduce(p: LinDiffPoly, Q: Iterable[LinDiffPoly], r: Ranking):
    """Reduction by ``Q`` and ``bar(Q)``; Q is tried first at each step."""
    return Reducer(Q, r, extended=True).reduce(p)


def is_irreducible(p: LinDiffPoly, Q: Iterable[LinDiffPoly], r: Ranking,
                   extended: bool = False) -> bool:
    red = Reducer(Q, r, extended=extended)
    return not any(red.is_reducible(d) for d in p.terms)
