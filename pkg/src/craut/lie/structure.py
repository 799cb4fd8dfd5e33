"""Structure constants, gradings and basis matching for real Lie algebras of fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import ClosureError
from ..linalg import Echelon
from .fields import HoloVectorField

Table = dict  # (a, b) -> {c: Fraction}, 0-based, [X_a, X_b] = sum_c t[c] X_c


class SpanSolver:
    """Express fields as real combinations of a fixed independent basis."""

    def __init__(self, basis: Sequence[HoloVectorField]):
        self.basis = list(basis)
        self._ech = Echelon(track=True)
        for i, X in enumerate(self.basis):
            if not self._ech.add(X.real_vector()):
                raise ValueError(f"basis element {i} is linearly dependent on the others")

    def express(self, X: HoloVectorField) -> dict[int, Fraction] | None:
        return self._ech.express(X.real_vector())


def structure_constants(basis: Sequence[HoloVectorField]) -> Table:
    """``[X_a, X_b] = sum_c C[(a, b)][c] X_c`` for all ``a < b`` (0-based).

    Raises :class:`ClosureError` when a bracket leaves the span.
    """
    solver = SpanSolver(basis)
    out: Table = {}
    for a, b in itertools.combinations(range(len(basis)), 2):
        br = basis[a].bracket(basis[b])
        coeffs = solver.express(br)
        if coeffs is None:
            raise ClosureError(a + 1, b + 1)
        out[(a, b)] = coeffs
    return out


def bracket_coeffs(table: Table, a: int, b: int) -> dict[int, Fraction]:
    """Entry ``[X_a, X_b]`` from an upper-triangular table (0-based)."""
    if a == b:
        return {}
    if a < b:
        return dict(table.get((a, b), {}))
    return {c: -v for c, v in table.get((b, a), {}).items()}


def is_antisymmetric(table: Table, dim: int) -> bool:
    return all(bracket_coeffs(table, a, b) == {c: -v for c, v in bracket_coeffs(table, b, a).items()}
               for a in range(dim) for b in range(dim))


def jacobi_defect(table: Table, dim: int) -> list[tuple[int, int, int]]:
    """Triples where the Jacobi identity fails (empty when it holds)."""
    def br_vec(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for c, v in bracket_coeffs(table, i, j).items():
                    out[c] = out.get(c, 0) + xi * yj * v
        return {c: v for c, v in out.items() if v}

    bad = []
    unit = [{i: Fraction(1)} for i in range(dim)]
    for a, b, c in itertools.combinations(range(dim), 3):
        total: dict[int, Fraction] = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            inner = bracket_coeffs(table, y, z)
            for k, v in br_vec(unit[x], inner).items():
                total[k] = total.get(k, 0) + v
        if any(total.values()):
            bad.append((a, b, c))
    return bad


@dataclass
class Grading:
    degrees: list[int | None]
    layers: dict[int, list[int]]
    failures: list[int] = field(default_factory=list)
    violations: list[tuple[int, int]] = field(default_factory=list)

    def layer_dims(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.layers.items())}

    @property
    def ok(self) -> bool:
        return not self.failures and not self.violations


def grading(basis: Sequence[HoloVectorField], weights: Sequence[int],
            table: Table | None = None) -> Grading:
    """Assign each field its weighted degree and check ``[g_i, g_j] in g_{i+j}``.

    Fields that are not weighted-homogeneous are listed in ``failures``.
    """
    degs: list[int | None] = []
    layers: dict[int, list[int]] = {}
    failures = []
    for i, X in enumerate(basis):
        ds = X.degrees(weights)
        if len(ds) == 1:
            d = ds.pop()
            degs.append(d)
            layers.setdefault(d, []).append(i)
        else:
            degs.append(None)
            failures.append(i)
    violations = []
    if table is not None:
        for (a, b), coeffs in table.items():
            if degs[a] is None or degs[b] is None:
                continue
            target = degs[a] + degs[b]
            if any(degs[c] != target for c, v in coeffs.items() if v):
                violations.append((a, b))
    return Grading(degs, dict(sorted(layers.items())), failures, violations)


def change_of_basis(computed: Sequence[HoloVectorField],
                    target: Sequence[HoloVectorField]) -> list[dict[int, Fraction]] | None:
    """Coefficients writing each target field in the computed basis.

    Returns None unless the targets lie in the span, are independent and
    have the same count (so the map is an invertible change of basis).
    """
    if len(computed) != len(target):
        return None
    solver = SpanSolver(computed)
    rows = []
    for X in target:
        c = solver.express(X)
        if c is None:
            return None
        rows.append(c)
    ech = Echelon()
    for X in target:
        if not ech.add(X.real_vector()):
            return None
    return rows


def derived_series_dims(basis: Sequence[HoloVectorField], max_steps: int = 10) -> list[int]:
    """Dimensions of g, [g, g], [[g, g], [g, g]], ... until they stabilise."""
    cur = list(basis)
    dims = [len(cur)]
    for _ in range(max_steps):
        ech = Echelon()
        nxt = []
        for X, Y in itertools.combinations(cur, 2):
            Z = X.bracket(Y)
            if not Z.is_zero() and ech.add(Z.real_vector()):
                nxt.append(Z)
        dims.append(len(nxt))
        if len(nxt) == len(cur) or not nxt:
            break
        cur = nxt
    return dims


def format_combination(coeffs: Mapping[int, Fraction], label: str = "X", one_based: bool = True) -> str:
    """Render ``{0: 3, 5: 2}`` as ``3*X1 + 2*X6``."""
    items = sorted((c, v) for c, v in coeffs.items() if v)
    if not items:
        return "0"
    parts = []
    for c, v in items:
        name = f"{label}{c + 1 if one_based else c}"
        mag = abs(v)
        body = name if mag == 1 else f"{_q(mag)}*{name}"
        parts.append(("-" if v < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_combination(text: str, dim: int, label: str = "X") -> dict[int, Fraction]:
    """Inverse of :func:`format_combination` (0-based keys)."""
    from ..polytext import parse_spoly

    names = [f"{label}{i}" for i in range(1, dim + 1)]
    p = parse_spoly(text, names)
    out = {}
    for e, c in p.terms.items():
        if sum(e) != 1 or not c.is_real():
            raise ValueError(f"not a real linear combination: {text!r}")
        out[e.index(1)] = c.re
    return out


def render_table(table: Table, dim: int, label: str = "X") -> str:
    """Upper-triangular commutator table as aligned text, rows acting on columns."""
    heads = [f"{label}{i + 1}" for i in range(dim)]
    cells = [["" for _ in range(dim)] for _ in range(dim)]
    for a in range(dim):
        for b in range(dim):
            if b < a:
                cells[a][b] = "*"
            else:
                cells[a][b] = format_combination(bracket_coeffs(table, a, b), label)
    width = max(len(s) for row in cells for s in row + heads)
    lw = max(len(h) for h in heads)
    lines = [" " * lw + " | " + " | ".join(h.ljust(width) for h in heads)]
    lines.append("-" * len(lines[0]))
    for a in range(dim):
        lines.append(heads[a].ljust(lw) + " | " + " | ".join(c.ljust(width) for c in cells[a]))
    return "\n".join(lines)
