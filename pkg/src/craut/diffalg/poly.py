"""Linear differential polynomials with Gaussian-rational coefficients."""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Mapping

from ..gaussrat import ONE, ZERO, GaussRat
from .ring import DerivationOp, Derivative, DiffRing, SignatureError

if TYPE_CHECKING:
    from .ranking import Ranking


class NoLeaderError(ValueError):
    """Raised when asking for the leader of a zero or constant polynomial."""


class LinDiffPoly:
    """``sum c_k * theta_k u_k + constant`` over a fixed :class:`DiffRing`.

    Instances are immutable.  ``terms`` never stores zero coefficients.
    """

    __slots__ = ("ring", "terms", "constant", "_hash")

    def __init__(
        self,
        ring: DiffRing,
        terms: Mapping[Derivative, GaussRat] | Iterable[tuple[Derivative, GaussRat]] = (),
        constant=ZERO,
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Derivative, GaussRat] = {}
        for d, c in items:
            ring.check(d)
            if not isinstance(d.op, DerivationOp):
                d = Derivative(d.indet, DerivationOp(d.op))
            c = GaussRat.coerce(c)
            s = acc.get(d)
            acc[d] = c if s is None else s + c
        self.ring = ring
        self.terms = {d: c for d, c in acc.items() if c}
        self.constant = GaussRat.coerce(constant)
        self._hash = None

    @classmethod
    def _make(cls, ring: DiffRing, terms: dict, constant: GaussRat) -> LinDiffPoly:
        # trusted constructor: terms already clean
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj.constant = constant
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring: DiffRing) -> LinDiffPoly:
        return cls._make(ring, {}, ZERO)

    @classmethod
    def const(cls, ring: DiffRing, c) -> LinDiffPoly:
        return cls._make(ring, {}, GaussRat.coerce(c))

    @classmethod
    def var(cls, ring: DiffRing, d: Derivative | str, coeff=ONE) -> LinDiffPoly:
        if isinstance(d, str):
            d = ring.derivative(d)
        ring.check(d)
        c = GaussRat.coerce(coeff)
        return cls._make(ring, {d: c} if c else {}, ZERO)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms and not self.constant

    def is_constant(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LinDiffPoly):
            return NotImplemented
        return (self.ring == other.ring and self.constant == other.constant
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.terms.items()), self.constant))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _same_ring(self, other: LinDiffPoly):
        if self.ring is not other.ring and self.ring != other.ring:
            raise SignatureError("polynomials belong to different rings")

    def __add__(self, other):
        if not isinstance(other, LinDiffPoly):
            return NotImplemented
        self._same_ring(other)
        return self.add_scaled(other, ONE)

    def __sub__(self, other):
        if not isinstance(other, LinDiffPoly):
            return NotImplemented
        self._same_ring(other)
        return self.add_scaled(other, -ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def __mul__(self, c):
        if isinstance(c, LinDiffPoly):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def add_scaled(self, other: LinDiffPoly, c) -> LinDiffPoly:
        """``self + c * other``."""
        c = GaussRat.coerce(c)
        if not c:
            return self
        t = dict(self.terms)
        for d, v in other.terms.items():
            s = t.get(d)
            if s is None:
                t[d] = v * c
            else:
                s = s + v * c
                if s:
                    t[d] = s
                else:
                    del t[d]
        return LinDiffPoly._make(self.ring, t, self.constant + other.constant * c)

    def scale(self, c) -> LinDiffPoly:
        c = GaussRat.coerce(c)
        if not c:
            return LinDiffPoly.zero(self.ring)
        if c == ONE:
            return self
        return LinDiffPoly._make(
            self.ring, {d: v * c for d, v in self.terms.items()}, self.constant * c)

    def derive(self, op: DerivationOp | Iterable[int]) -> LinDiffPoly:
        """Apply a derivation operator termwise; constants die unless op is 1."""
        if not isinstance(op, DerivationOp):
            op = DerivationOp(op)
        if len(op) != self.ring.m:
            raise SignatureError("derivation operator has the wrong arity")
        if op.is_identity():
            return self
        t = {Derivative(d.indet, d.op * op): c for d, c in self.terms.items()}
        return LinDiffPoly._make(self.ring, t, ZERO)

    def bar(self) -> LinDiffPoly:
        """Conjugate coefficients and swap every indeterminate with its partner."""
        partner = self.ring.partner
        t = {Derivative(partner(d.indet), d.op): c.conj() for d, c in self.terms.items()}
        return LinDiffPoly._make(self.ring, t, self.constant.conj())

    # -- ranking-dependent accessors ---------------------------------------
    def leader(self, r: Ranking) -> Derivative:
        if not self.terms:
            raise NoLeaderError("zero or constant polynomial has no leader")
        return max(self.terms, key=r.key)

    def initial(self, r: Ranking) -> GaussRat:
        return self.terms[self.leader(r)]

    def rank(self, r: Ranking) -> Derivative:
        # linear polynomials: rank = leader^1
        return self.leader(r)

    def monic(self, r: Ranking) -> LinDiffPoly:
        if not self.terms:
            if self.constant:
                return LinDiffPoly.const(self.ring, ONE)
            return self
        return self.scale(self.initial(r).inverse())

    def sorted_terms(self, r: Ranking) -> list[tuple[Derivative, GaussRat]]:
        """Terms from highest to lowest rank."""
        return sorted(self.terms.items(), key=lambda kv: r.key(kv[0]), reverse=True)

    def indeterminates(self) -> set[int]:
        return {d.indet for d in self.terms}

    def max_order(self) -> int:
        return max((d.order for d in self.terms), default=0)

    # -- text -----------------------------------------------------------
    def to_text(self, r: Ranking | None = None) -> str:
        from .text import render_poly

        return render_poly(self, r)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LinDiffPoly({self.to_text()!r})"
