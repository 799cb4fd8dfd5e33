"""Ring signatures: indeterminates with bar partners, derivation operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class SignatureError(ValueError):
    """Objects from different differential rings were mixed."""


class DerivationOp(tuple):
    """A derivation operator ``d1^e1 ... dm^em`` stored as its exponent vector.

    Multiplication in the free commutative semigroup is componentwise
    addition, so ``DerivationOp`` is just a tuple with a few helpers.
    """

    __slots__ = ()

    def __new__(cls, exps: Iterable[int]):
        return tuple.__new__(cls, exps)

    @classmethod
    def identity(cls, m: int) -> DerivationOp:
        return tuple.__new__(cls, (0,) * m)

    @classmethod
    def unit(cls, m: int, k: int, power: int = 1) -> DerivationOp:
        e = [0] * m
        e[k] = power
        return tuple.__new__(cls, e)

    @property
    def order(self) -> int:
        return sum(self)

    def is_identity(self) -> bool:
        return not any(self)

    def __mul__(self, other):
        return tuple.__new__(DerivationOp, [a + b for a, b in zip(self, other)])

    def lcm(self, other) -> DerivationOp:
        return tuple.__new__(DerivationOp, [a if a > b else b for a, b in zip(self, other)])

    def divides(self, other) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def quotient(self, other) -> DerivationOp:
        """``self / other``; caller guarantees ``other.divides(self)``."""
        return tuple.__new__(DerivationOp, [a - b for a, b in zip(self, other)])

    def __repr__(self):
        return f"DerivationOp({list(self)})"


class Derivative(NamedTuple):
    """``op`` applied to indeterminate number ``indet`` of some ring."""

    indet: int
    op: DerivationOp

    @property
    def order(self) -> int:
        return sum(self.op)

    def derive(self, op: DerivationOp) -> Derivative:
        return Derivative(self.indet, self.op * op)


@dataclass(frozen=True)
class Indeterminate:
    id: int
    name: str
    bar_partner: int
    is_barred: bool

    @property
    def self_conjugate(self) -> bool:
        return self.bar_partner == self.id


class DiffRing:
    """Signature of a differential polynomial ring Q(i){u_1, ..., u_n}.

    ``names`` lists the unbarred (or self-conjugate) unknowns.  With
    ``conjugates=True`` every unknown ``u`` gets a tagged partner named
    ``bar(u)`` placed right after it; with ``conjugates=False`` all unknowns
    are real (their own partner).  A per-name list of booleans mixes both.
    """

    def __init__(
        self,
        names: Sequence[str],
        derivations: Sequence[str],
        conjugates: bool | Sequence[bool] = True,
    ):
        if isinstance(conjugates, bool):
            conjugates = [conjugates] * len(names)
        if len(conjugates) != len(names):
            raise ValueError("conjugates flag list must match names")
        if len(set(names)) != len(names):
            raise ValueError("duplicate indeterminate names")
        if len(set(derivations)) != len(derivations):
            raise ValueError("duplicate derivation names")
        indets: list[Indeterminate] = []
        for name, conj in zip(names, conjugates):
            k = len(indets)
            if conj:
                indets.append(Indeterminate(k, name, k + 1, False))
                indets.append(Indeterminate(k + 1, f"bar({name})", k, True))
            else:
                indets.append(Indeterminate(k, name, k, False))
        self.indeterminates: tuple[Indeterminate, ...] = tuple(indets)
        self.derivations: tuple[str, ...] = tuple(derivations)
        self._by_name = {u.name: u.id for u in indets}
        self._partner = [u.bar_partner for u in indets]
        self._signature = (tuple(u.name for u in indets), self.derivations,
                           tuple(self._partner))

    @property
    def m(self) -> int:
        return len(self.derivations)

    def __len__(self):
        return len(self.indeterminates)

    def __eq__(self, other):
        return isinstance(other, DiffRing) and self._signature == other._signature

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        names = [u.name for u in self.indeterminates if not u.is_barred]
        return f"DiffRing({names}, {list(self.derivations)})"

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown indeterminate {name!r}") from None

    def name(self, indet: int) -> str:
        return self.indeterminates[indet].name

    def partner(self, indet: int) -> int:
        return self._partner[indet]

    def is_barred(self, indet: int) -> bool:
        return self.indeterminates[indet].is_barred

    def identity(self) -> DerivationOp:
        return DerivationOp.identity(self.m)

    def derivative(self, name: str, exps: Sequence[int] | None = None) -> Derivative:
        op = self.identity() if exps is None else DerivationOp(exps)
        if len(op) != self.m:
            raise SignatureError(f"expected {self.m} derivation exponents, got {len(op)}")
        return Derivative(self.index(name), op)

    def bar(self, d: Derivative) -> Derivative:
        return Derivative(self._partner[d.indet], d.op)

    def check(self, d: Derivative) -> None:
        if not 0 <= d.indet < len(self.indeterminates) or len(d.op) != self.m:
            raise SignatureError(f"{d!r} does not belong to {self!r}")


def lcd(d1: Derivative, d2: Derivative) -> Derivative | None:
    """Least common derivative, or ``None`` for different indeterminates."""
    if d1.indet != d2.indet:
        return None
    return Derivative(d1.indet, d1.op.lcm(d2.op))


def is_derivative_of(d: Derivative, base: Derivative) -> bool:
    """True when ``d = theta * base`` for some derivation operator theta."""
    return d.indet == base.indet and base.op.divides(d.op)


def derivation_ops(m: int, max_order: int, min_order: int = 0) -> list[DerivationOp]:
    """All operators in m variables with ``min_order <= order <= max_order``."""
    out: list[DerivationOp] = []

    def rec(prefix: list[int], k: int, left: int):
        if k == m - 1:
            for e in range(left + 1):
                if sum(prefix) + e >= min_order:
                    out.append(DerivationOp(prefix + [e]))
            return
        for e in range(left + 1):
            rec(prefix + [e], k + 1, left - e)

    if m == 0:
        return [DerivationOp(())] if min_order <= 0 else []
    rec([], 0, max_order)
    out.sort(key=lambda op: (op.order, tuple(-e for e in op)))
    return out
