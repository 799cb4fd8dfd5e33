"""Exact sparse linear algebra over Q.

Vectors are ``{column: Fraction}`` dicts without zero entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vec = dict


def _axpy(row: Vec, other: Vec, f: Fraction) -> None:
    """row -= f * other, in place."""
    for c, v in other.items():
        s = row.get(c)
        if s is None:
            row[c] = -f * v
        else:
            s -= f * v
            if s:
                row[c] = s
            else:
                del row[c]


class Echelon:
    """Incremental fully reduced row echelon form.

    Pivot rows are normalised to 1 at their pivot column and contain no
    other pivot column.  With ``track=True`` every stored row remembers which
    inputs (by insertion index) it combines, so :meth:`express` can write a
    vector in terms of the inputs.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[Hashable, Vec] = {}
        self.combos: dict[Hashable, Vec] = {}
        self.track = track
        self.count = 0

    def reduce(self, row: Vec, combo: Vec | None = None) -> tuple[Vec, Vec | None]:
        row = {c: Fraction(v) for c, v in row.items() if v}
        for c in [c for c in row if c in self.pivots]:
            f = row.get(c)
            if not f:
                continue
            _axpy(row, self.pivots[c], f)
            if combo is not None:
                _axpy(combo, self.combos[c], f)
        return row, combo

    def add(self, row: Vec) -> bool:
        """Insert a row; returns True when it was independent."""
        idx = self.count
        self.count += 1
        combo = {idx: Fraction(1)} if self.track else None
        row, combo = self.reduce(row, combo)
        if not row:
            return False
        c = min(row, key=_sort_key)
        f = row[c]
        if f != 1:
            row = {k: v / f for k, v in row.items()}
            if combo is not None:
                combo = {k: v / f for k, v in combo.items()}
        for pc, pr in self.pivots.items():
            g = pr.get(c)
            if g:
                _axpy(pr, row, g)
                if combo is not None:
                    _axpy(self.combos[pc], combo, g)
        self.pivots[c] = row
        if combo is not None:
            self.combos[c] = combo
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: Vec) -> Vec | None:
        """Coefficients ``x`` with ``v = sum x[i] * input_i``, or None."""
        if not self.track:
            raise ValueError("express needs track=True")
        rest, combo = self.reduce(v, {})
        if rest:
            return None
        return {k: -x for k, x in combo.items() if x}


def _sort_key(c):
    return (0, c) if isinstance(c, (int, Fraction)) else (1, repr(c))


def rank(rows: Iterable[Vec]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def nullspace(rows: Iterable[Vec], columns: Sequence[Hashable]) -> list[Vec]:
    """A basis of ``{x : row . x = 0 for all rows}`` over the given columns.

    The basis is in reduced form: each vector has a 1 in its own free
    column and zeros in the other free columns.
    """
    order = {c: i for i, c in enumerate(columns)}
    piv: dict[Hashable, Vec] = {}
    for r in rows:
        r = {c: Fraction(v) for c, v in r.items() if v}
        for c in r:
            if c not in order:
                raise KeyError(f"row uses unknown column {c!r}")
        while r:
            hits = [c for c in r if c in piv]
            if not hits:
                break
            c = min(hits, key=order.__getitem__)
            _axpy(r, piv[c], r[c])
        if not r:
            continue
        c = min(r, key=order.__getitem__)
        f = r[c]
        if f != 1:
            r = {k: v / f for k, v in r.items()}
        # keep the basis fully reduced so back substitution is trivial
        for pc, pr in piv.items():
            if c in pr:
                _axpy(pr, r, pr[c])
        piv[c] = r
    free = [c for c in columns if c not in piv]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for pc, pr in piv.items():
            x = pr.get(f)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def rref_vectors(vectors: Sequence[Vec], columns: Sequence[Hashable]) -> list[Vec]:
    """Reduced row echelon basis of the span, ordered by pivot column."""
    order = {c: i for i, c in enumerate(columns)}
    piv: dict[Hashable, Vec] = {}
    for r in vectors:
        r = {c: Fraction(v) for c, v in r.items() if v}
        while r:
            hits = [c for c in r if c in piv]
            if not hits:
                break
            c = min(hits, key=order.__getitem__)
            _axpy(r, piv[c], r[c])
        if not r:
            continue
        c = min(r, key=order.__getitem__)
        f = r[c]
        if f != 1:
            r = {k: v / f for k, v in r.items()}
        for pc, pr in piv.items():
            if c in pr:
                _axpy(pr, r, pr[c])
        piv[c] = r
    return [piv[c] for c in sorted(piv, key=order.__getitem__)]
