"""Rigid model submanifolds ``w_j - conj(w_j) = Xi_j(z, zbar)``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from ..errors import ModelValidationError, ParseError
from ..gaussrat import ONE, ZERO, GaussRat
from ..polytext import parse_spoly
from ..sparse import SPoly


def z_names(n: int) -> list[str]:
    return ["z"] if n == 1 else [f"z{i}" for i in range(1, n + 1)]


def w_names(k: int) -> list[str]:
    return [f"w{j}" for j in range(1, k + 1)]


def zz_names(n: int) -> list[str]:
    """Variables of Xi: holomorphic z's followed by the zbar's."""
    zs = z_names(n)
    return zs + [f"{z[0]}b{z[1:]}" for z in zs]


@dataclass(frozen=True)
class ModelSpec:
    """CR dimension ``n``, codimension ``k`` and the polynomials Xi_j.

    Each Xi_j is an :class:`SPoly` in ``z_1..z_n, zb_1..zb_n``.
    """

    n: int
    k: int
    xi: tuple[SPoly, ...]
    name: str = ""

    def __post_init__(self):
        problems = validate(self)
        if problems:
            raise ModelValidationError(problems)

    @property
    def weights(self) -> tuple[int, ...]:
        """weight(w_j) = total degree of Xi_j."""
        return tuple(p.degree() for p in self.xi)

    @property
    def min_degrees(self) -> tuple[int, ...]:
        return tuple(min(sum(e) for e in p.terms) for p in self.xi)

    def is_homogeneous(self) -> bool:
        return self.weights == self.min_degrees

    def to_json(self) -> dict:
        n = self.n
        eqs = []
        for p in self.xi:
            terms = []
            for e, c in p.sorted_terms():
                terms.append({"re": str(GaussRat(c.re)), "im": str(GaussRat(c.im)),
                              "zbar": list(e[n:]), "z": list(e[:n])})
            eqs.append(terms)
        doc = {"n": self.n, "k": self.k, "xi": eqs}
        if self.name:
            doc["name"] = self.name
        return doc

    def xi_text(self) -> list[str]:
        return [str(p) for p in self.xi]


def validate(m: ModelSpec) -> list[str]:
    """Every problem with the model, or an empty list."""
    problems = []
    if not isinstance(m.n, int) or m.n < 1:
        problems.append(f"n must be a positive integer, got {m.n!r}")
    if not isinstance(m.k, int) or m.k < 1:
        problems.append(f"k must be a positive integer, got {m.k!r}")
    if problems:
        return problems
    if len(m.xi) != m.k:
        problems.append(f"expected {m.k} defining polynomials, got {len(m.xi)}")
    names = tuple(zz_names(m.n))
    n = m.n
    for j, p in enumerate(m.xi, start=1):
        if p.names != names:
            problems.append(f"Xi_{j} is not a polynomial in {', '.join(names)}")
            continue
        if p.is_zero():
            problems.append(f"Xi_{j} is identically zero")
            continue
        for e, c in p.terms.items():
            if sum(e) < 2:
                problems.append(f"Xi_{j} has a term of degree {sum(e)} (must be O(2))")
                break
        for e, c in p.terms.items():
            swapped = e[n:] + e[:n]
            if p.terms.get(swapped, ZERO) != -c.conj():
                problems.append(
                    f"Xi_{j} violates the reality condition at z^{list(e[:n])} zbar^{list(e[n:])}")
                break
    return problems


# -- loading ---------------------------------------------------------------

def _aliases(n: int) -> dict[str, int]:
    al = {}
    for i in range(n):
        al[f"z{i + 1}"] = i
        al[f"zb{i + 1}"] = n + i
    if n == 1:
        al["z"] = 0
        al["zb"] = 1
    return al


def parse_xi(text: str, n: int) -> SPoly:
    """Parse one defining polynomial written in the model DSL."""
    return parse_spoly(text, zz_names(n), _aliases(n))


def _infer_n(texts: Sequence[str]) -> int:
    import re

    idx = [int(x) for t in texts for x in re.findall(r"\bzb?(\d+)\b", t)]
    return max(idx, default=1)


def model_from_json(doc: dict, name: str = "") -> ModelSpec:
    problems = []
    try:
        n, k, raw = doc["n"], doc["k"], doc["xi"]
    except (KeyError, TypeError) as e:
        raise ModelValidationError([f"missing field {e}"]) from None
    if not isinstance(n, int) or n < 1 or not isinstance(k, int) or k < 1:
        raise ModelValidationError([f"n and k must be positive integers (got n={n!r}, k={k!r})"])
    if not isinstance(raw, list):
        raise ModelValidationError(["xi must be a list"])
    names = zz_names(n)
    xi = []
    for j, eq in enumerate(raw, start=1):
        if isinstance(eq, str):
            try:
                xi.append(parse_xi(eq, n))
            except ParseError as e:
                problems.append(f"Xi_{j}: {e}")
            continue
        terms: dict[tuple, GaussRat] = {}
        ok = True
        for t in eq:
            try:
                c = GaussRat(str(t.get("re", "0")).strip() or "0", str(t.get("im", "0")).strip() or "0")
                zb, zz = list(t.get("zbar", [0] * n)), list(t.get("z", [0] * n))
            except (ValueError, ZeroDivisionError, AttributeError) as e:
                problems.append(f"Xi_{j}: bad term {t!r} ({e})")
                ok = False
                break
            if len(zb) != n or len(zz) != n or any((not isinstance(x, int)) or x < 0 for x in zb + zz):
                problems.append(f"Xi_{j}: exponent vectors must have {n} non-negative integers")
                ok = False
                break
            key = tuple(zz + zb)
            terms[key] = terms.get(key, ZERO) + c
        if ok:
            xi.append(SPoly(names, terms))
    if problems:
        raise ModelValidationError(problems)
    return ModelSpec(n, k, tuple(xi), name or doc.get("name", ""))


def model_from_text(text: str, name: str = "") -> ModelSpec:
    """One defining polynomial per non-empty line; ``#`` starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    exprs = []
    for ln in lines:
        if "=" in ln:
            ln = ln.split("=", 1)[1]
        exprs.append(ln)
    if not exprs:
        raise ModelValidationError(["model text contains no defining polynomials"])
    n = _infer_n(exprs)
    problems, xi = [], []
    for j, e in enumerate(exprs, start=1):
        try:
            xi.append(parse_xi(e, n))
        except ParseError as err:
            problems.append(f"Xi_{j}: {err}")
    if problems:
        raise ModelValidationError(problems)
    return ModelSpec(n, len(xi), tuple(xi), name)


def load_model(path: str | Path) -> ModelSpec:
    """Load a model from a JSON document or a DSL text file.

    A bare fixture name such as ``m1`` or ``heisenberg`` selects one of the
    bundled models.
    """
    p = Path(path)
    if not p.exists():
        fx = fixture_path(str(path))
        if fx is None:
            raise FileNotFoundError(f"no such model file: {path}")
        p = fx
    text = p.read_text()
    if p.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", text, e.pos) from None
        return model_from_json(doc, doc.get("name", p.stem))
    return model_from_text(text, p.stem)


def fixture_path(name: str) -> Path | None:
    base = Path(__file__).resolve().parent.parent / "data" / "models"
    for cand in (base / name, base / f"{name}.json", base / f"{name.lower()}.json"):
        if cand.is_file():
            return cand
    return None


def builtin_model(name: str) -> ModelSpec:
    p = fixture_path(name)
    if p is None:
        raise KeyError(f"no bundled model named {name!r}")
    return load_model(p)


# -- coefficient tables ----------------------------------------------------

class XiTable:
    """Coefficients ``Xi_{j, alpha, beta}`` of ``zbar^alpha z^beta`` in Xi_j.

    ``j`` is 1-based; ``alpha`` and ``beta`` are exponent tuples of length n.
    """

    def __init__(self, m: ModelSpec):
        self.model = m
        self.n = m.n
        self.k = m.k
        self.table: dict[tuple[int, tuple, tuple], GaussRat] = {}
        for j, p in enumerate(m.xi, start=1):
            for e, c in p.terms.items():
                self.table[(j, tuple(e[m.n:]), tuple(e[:m.n]))] = c
        self.max_bidegree = [
            (max(sum(e[m.n:]) for e in p.terms), max(sum(e[:m.n]) for e in p.terms))
            for p in m.xi
        ]

    def coeff(self, j: int, alpha: Sequence[int], beta: Sequence[int]) -> GaussRat:
        return self.table.get((j, tuple(alpha), tuple(beta)), ZERO)

    def polynomial(self, j: int) -> SPoly:
        names = zz_names(self.n)
        return SPoly(names, {beta + alpha: c for (jj, alpha, beta), c in self.table.items()
                             if jj == j})

    def items(self):
        return sorted(self.table.items())

    @lru_cache(maxsize=None)
    def power(self, gamma: tuple[int, ...]) -> SPoly:
        """prod_j Xi_j^gamma_j."""
        if not any(gamma):
            return SPoly.const(zz_names(self.n), ONE)
        k = next(i for i, g in enumerate(gamma) if g)
        rest = list(gamma)
        rest[k] -= 1
        return self.power(tuple(rest)) * self.model.xi[k]


def xi_expand(m: ModelSpec) -> XiTable:
    return XiTable(m)


def a_poly(alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int],
           xi: XiTable) -> GaussRat:
    """Coefficient of ``zbar^alpha z^beta`` in ``prod_j Xi_j^gamma_j``."""
    if len(gamma) != xi.k:
        raise ValueError(f"gamma must have {xi.k} entries")
    return xi.power(tuple(gamma)).coefficient(tuple(beta) + tuple(alpha))


@dataclass(frozen=True)
class Bounds:
    """Truncation of the polynomial ansatz.

    ``z_bound_z`` caps the z-degree of each Z^i, ``z_bound_w[l]`` that of
    W^l, and ``w_bound`` the weighted degree of the vector fields (the
    grading degree), which fixes how far each coefficient is expanded in w.
    """

    z_bound_z: int
    z_bound_w: tuple[int, ...]
    w_bound: int

    def raised(self, by: int = 1) -> Bounds:
        return Bounds(self.z_bound_z + by, tuple(b + by for b in self.z_bound_w),
                      self.w_bound + by)

    def to_json(self) -> dict:
        return {"z_bound_z": self.z_bound_z, "z_bound_w": list(self.z_bound_w),
                "w_bound": self.w_bound}


def degree_bounds(m: ModelSpec, deg_z: int | None = None,
                  deg_w: int | None = None) -> tuple[Bounds, tuple[int, ...]]:
    """Default bounds and the weights ``(1 for each z, deg Xi_j for each w_j)``.

    Z^i is bounded by the largest weight, W^l by weight(w_l), and the field
    degree by the largest weight.  ``deg_z`` overrides every z-bound and
    ``deg_w`` the field-degree bound.
    """
    wts = m.weights
    mx = max(wts)
    zz = mx if deg_z is None else deg_z
    zw = tuple(wts) if deg_z is None else tuple(deg_z for _ in wts)
    b = Bounds(zz, zw, mx if deg_w is None else deg_w)
    return b, (1,) * m.n + tuple(wts)
