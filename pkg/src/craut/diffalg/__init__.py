"""Linear differential algebra over Q(i): rings, rankings, Ritt reduction."""

from .poly import LinDiffPoly, NoLeaderError
from .ranking import Ranking, RankingKind, compare
from .reduction import (Certificate, Reducer, Step, extended_ritt_reduce,
                        is_irreducible, ritt_reduce)
from .ring import (DerivationOp, Derivative, DiffRing, Indeterminate,
                   SignatureError, derivation_ops, is_derivative_of, lcd)
from .text import ParseError, parse_derivative, parse_poly, render_derivative

__all__ = [
    "Certificate", "DerivationOp", "Derivative", "DiffRing", "Indeterminate",
    "LinDiffPoly", "NoLeaderError", "ParseError", "Ranking", "RankingKind",
    "Reducer", "SignatureError", "Step", "compare", "derivation_ops",
    "extended_ritt_reduce", "is_derivative_of", "is_irreducible", "lcd",
    "parse_derivative", "parse_poly", "render_derivative", "ritt_reduce",
]
