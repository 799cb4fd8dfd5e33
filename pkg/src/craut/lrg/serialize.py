"""JSON documents for rings, canonical systems and series."""

from __future__ import annotations

from ..diffalg import DiffRing, Ranking, parse_poly
from .completion import CanonicalSystem


def ring_to_json(ring: DiffRing) -> dict:
    primary = [u for u in ring.indeterminates if not u.is_barred]
    return {
        "indeterminates": [u.name for u in primary],
        "conjugates": [not u.self_conjugate for u in primary],
        "derivations": list(ring.derivations),
    }


def ring_from_json(doc: dict) -> DiffRing:
    return DiffRing(doc["indeterminates"], doc["derivations"],
                    doc.get("conjugates", True))


def system_to_json(G: CanonicalSystem) -> dict:
    r = G.ranking
    return {
        "ring": ring_to_json(r.ring),
        "ranking": r.descriptor(),
        "generators": [g.to_text(r) for g in G.generators],
        "inconsistent": G.inconsistent,
    }


def system_from_json(doc: dict) -> CanonicalSystem:
    ring = ring_from_json(doc["ring"])
    rk = doc["ranking"]
    r = Ranking(ring, rk["kind"], rk.get("blocks"))
    gens = tuple(parse_poly(t, ring) for t in doc["generators"])
    return CanonicalSystem(gens, r, bool(doc.get("inconsistent", False)))
