"""Orderly and elimination rankings on derivatives."""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .ring import Derivative, DiffRing, SignatureError


class RankingKind(str, Enum):
    ORDERLY = "orderly"
    ELIMINATION = "elimination"


class Ranking:
    """A total order on the derivatives of one ring.

    ``blocks`` is a list of blocks from highest to lowest; each block is a
    name or a list of names of unbarred (or self-conjugate) indeterminates.
    Every indeterminate must appear exactly once.  A barred indeterminate
    lives in its partner's block and sits right below it.

    The comparison key is a flat tuple of ints, larger meaning higher:

    * orderly:     (order, block, exponents..., slot, unbarred)
    * elimination: (block, order, exponents..., slot, unbarred)

    where ``block`` counts down from the top block and ``slot`` breaks ties
    between indeterminates sharing a block.
    """

    def __init__(self, ring: DiffRing, kind: RankingKind | str = "orderly",
                 blocks: Sequence[str | Sequence[str]] | None = None):
        self.ring = ring
        kind = kind.value if isinstance(kind, RankingKind) else str(kind).lower()
        if kind in ("elim", "elimination"):
            self.kind = RankingKind.ELIMINATION
        elif kind == "orderly":
            self.kind = RankingKind.ORDERLY
        else:
            raise ValueError(f"unknown ranking kind {kind!r}")
        primary = [u.name for u in ring.indeterminates if not u.is_barred]
        if blocks is None:
            blocks = [[n] for n in primary]
        norm = [[b] if isinstance(b, str) else list(b) for b in blocks]
        flat = [n for b in norm for n in b]
        if sorted(flat) != sorted(primary):
            raise ValueError("blocks must list every unbarred indeterminate exactly once")
        self.blocks: tuple[tuple[str, ...], ...] = tuple(tuple(b) for b in norm)
        nb = len(norm)
        self._pos: list[tuple[int, int, int]] = [(0, 0, 0)] * len(ring)
        for bi, b in enumerate(norm):
            for si, name in enumerate(b):
                k = ring.index(name)
                self._pos[k] = (nb - bi, len(b) - si, 1)
                p = ring.partner(k)
                if p != k:
                    self._pos[p] = (nb - bi, len(b) - si, 0)
        self._cache: dict[Derivative, tuple[int, ...]] = {}

    def key(self, d: Derivative) -> tuple[int, ...]:
        k = self._cache.get(d)
        if k is None:
            try:
                blk, slot, unb = self._pos[d.indet]
            except (IndexError, TypeError):
                raise SignatureError(f"{d!r} is not a derivative of this ring") from None
            if len(d.op) != self.ring.m:
                raise SignatureError(f"{d!r} has the wrong number of derivations")
            if self.kind is RankingKind.ORDERLY:
                k = (sum(d.op), blk, *d.op, slot, unb)
            else:
                k = (blk, sum(d.op), *d.op, slot, unb)
            self._cache[d] = k
        return k

    def compare(self, d1: Derivative, d2: Derivative) -> int:
        """-1, 0 or 1 as d1 is lower than, equal to or higher than d2."""
        k1, k2 = self.key(d1), self.key(d2)
        return (k1 > k2) - (k1 < k2)

    def descriptor(self) -> dict:
        return {
            "kind": self.kind.value,
            "blocks": [list(b) for b in self.blocks],
            "derivations": list(self.ring.derivations),
        }

    def __eq__(self, other):
        return (isinstance(other, Ranking) and self.ring == other.ring
                and self.kind == other.kind and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.ring, self.kind, self.blocks))

    def __repr__(self):
        return f"Ranking({self.kind.value}, blocks={[list(b) for b in self.blocks]})"


def compare(r: Ranking, d1: Derivative, d2: Derivative) -> int:
    return r.compare(d1, d2)
