"""Published bases, gradings and commutator tables shipped as fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .fields import HoloVectorField
from .structure import Table, bracket_coeffs, format_combination, parse_combination

REFERENCE_MODELS = ("m1", "m2", "m3")


@dataclass
class ReferencePresentation:
    model: str
    basis: list[HoloVectorField]
    grading: dict[int, list[int]]  # 1-based indices
    table: Table  # 0-based, upper triangle, only nonzero entries

    @property
    def dimension(self) -> int:
        return len(self.basis)


def load_reference(name_or_path: str | Path, n: int = 1, k: int = 8) -> ReferencePresentation:
    p = Path(name_or_path)
    if p.suffix == ".json" and p.exists():
        data = json.loads(p.read_text())
    else:
        src = resources.files("craut").joinpath("data", "reference", f"{name_or_path}.json")
        data = json.loads(src.read_text())
    basis = [HoloVectorField.from_mapping(n, k, comps) for comps in data["basis"]]
    dim = len(basis)
    table: Table = {}
    for key, text in data["table"].items():
        a, b = (int(x) - 1 for x in key.split(","))
        if not a < b:
            raise ValueError(f"table key {key!r} must be upper triangular")
        coeffs = parse_combination(text, dim)
        if coeffs:
            table[(a, b)] = coeffs
    grading = {int(d): list(v) for d, v in data["grading"].items()}
    return ReferencePresentation(data.get("model", str(name_or_path)), basis,
                                 dict(sorted(grading.items())), table)


@dataclass
class TableMismatch:
    a: int  # 1-based
    b: int
    computed: dict[int, Fraction]
    printed: dict[int, Fraction]

    def __str__(self):
        return (f"[X{self.a}, X{self.b}]: computed {format_combination(self.computed)}, "
                f"printed {format_combination(self.printed)}")


def compare_tables(computed: Table, printed: Table, dim: int) -> list[TableMismatch]:
    """All upper-triangle cells where two tables disagree."""
    out = []
    for a in range(dim):
        for b in range(a + 1, dim):
            x = {c: v for c, v in bracket_coeffs(computed, a, b).items() if v}
            y = {c: v for c, v in bracket_coeffs(printed, a, b).items() if v}
            if x != y:
                out.append(TableMismatch(a + 1, b + 1, x, y))
    return out
