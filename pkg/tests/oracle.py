"""Brute-force solver for infinitesimal CR-automorphisms of rigid models.

Independent of the package: reads model JSON directly, uses its own
dict-based polynomials over Q(i) and its own elimination.  A fully generic
polynomial ansatz is substituted into ``(X + conj X)(w - conj w - Xi)``
restricted to the model, every monomial coefficient becomes a real linear
equation, and the kernel is computed in one solve.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path

MODELS = Path(__file__).resolve().parent.parent / "src" / "craut" / "data" / "models"

# complex numbers are (re, im) pairs of Fractions; polynomials are
# {exponent tuple: (re, im)} over variables (z..., zb..., wb...)


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def padd(p, q, scale=(Fraction(1), Fraction(0))):
    out = dict(p)
    for e, c in q.items():
        c = cmul(c, scale)
        s = out.get(e, (Fraction(0), Fraction(0)))
        s = (s[0] + c[0], s[1] + c[1])
        if s[0] or s[1]:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            c = cmul(c1, c2)
            s = out.get(e, (Fraction(0), Fraction(0)))
            s = (s[0] + c[0], s[1] + c[1])
            if s[0] or s[1]:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def pdiff(p, v):
    out = {}
    for e, c in p.items():
        if e[v]:
            e2 = list(e)
            e2[v] -= 1
            out[tuple(e2)] = (c[0] * e[v], c[1] * e[v])
    return out


def load(name):
    doc = json.loads((MODELS / f"{name}.json").read_text())
    n, k = doc["n"], doc["k"]
    nv = 2 * n + k
    xi = []
    for terms in doc["xi"]:
        p = {}
        for t in terms:
            e = tuple(t["z"]) + tuple(t["zbar"]) + (0,) * k
            p = padd(p, {e: (Fraction(t["re"]), Fraction(t["im"]))})
        xi.append(p)
    weights = [max(sum(e[:2 * n]) for e in p) for p in xi]
    return n, k, nv, xi, weights


def monomials(nvars, wts, bound):
    """Exponent tuples with weighted degree <= bound."""
    out = []

    def rec(prefix, i, left):
        if i == nvars:
            out.append(tuple(prefix))
            return
        for e in range(left // wts[i] + 1):
            rec(prefix + [e], i + 1, left - e * wts[i])

    rec([], 0, bound)
    return out


def eliminate_kernel(rows, ncols):
    """Kernel basis of a sparse Fraction matrix given as dict rows."""
    piv = {}
    for r in rows:
        r = dict(r)
        for c in sorted(r):
            if c in piv and c in r:
                f = r[c]
                for cc, v in piv[c].items():
                    s = r.get(cc, 0) - f * v
                    if s:
                        r[cc] = s
                    else:
                        r.pop(cc, None)
        r = {c: v for c, v in r.items() if v}
        if not r:
            continue
        c0 = min(r)
        f = r[c0]
        r = {c: v / f for c, v in r.items()}
        for pc in list(piv):
            g = piv[pc].get(c0)
            if g:
                row = piv[pc]
                for cc, v in r.items():
                    s = row.get(cc, 0) - g * v
                    if s:
                        row[cc] = s
                    else:
                        row.pop(cc, None)
        piv[c0] = r
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for pc, row in piv.items():
            x = row.get(f)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def solve(name, w_bound=None):
    """Real basis of the tangent fields of field degree <= w_bound.

    Returns a list of vectors keyed ``(component, exponents over (z, w),
    0 for real or 1 for imaginary part)``.
    """
    n, k, nv, xi, weights = load(name)
    if w_bound is None:
        w_bound = max(weights)
    fw = [1] * n + weights  # weights of z..., w...
    one = (Fraction(1), Fraction(0))
    I = (Fraction(0), Fraction(1))

    def var(i):
        e = [0] * nv
        e[i] = 1
        return {tuple(e): one}

    # holomorphic substitution z -> z, w_l -> wb_l + Xi_l
    hol_img = [var(i) for i in range(n)] + [padd(var(2 * n + l), xi[l]) for l in range(k)]
    anti_img = [var(n + i) for i in range(n)] + [var(2 * n + l) for l in range(k)]
    power_cache = {}

    def power(img, tag, v, e):
        key = (tag, v, e)
        if key not in power_cache:
            p = {(0,) * nv: one}
            for _ in range(e):
                p = pmul(p, img[v])
            power_cache[key] = p
        return power_cache[key]

    def compose(mono, img, tag):
        p = {(0,) * nv: one}
        for v, e in enumerate(mono):
            if e:
                p = pmul(p, power(img, tag, v, e))
        return p

    dz = [[pdiff(xi[j], i) for i in range(n)] for j in range(k)]
    dzb = [[pdiff(xi[j], n + i) for i in range(n)] for j in range(k)]

    columns = []  # (component, mono, part)
    residual_cols = []
    for comp in range(n + k):
        for mono in monomials(n + k, fw, w_bound + fw[comp]):
            h = compose(mono, hol_img, "h")
            a = compose(mono, anti_img, "a")
            for part, c in ((0, one), (1, I)):
                cbar = (c[0], -c[1])
                res = []
                for j in range(k):
                    r = {}
                    if comp >= n:
                        if comp - n == j:
                            r = padd(padd(r, h, c), a, (-cbar[0], -cbar[1]))
                    else:
                        i = comp
                        r = padd(r, pmul(h, dz[j][i]), (-c[0], -c[1]))
                        r = padd(r, pmul(a, dzb[j][i]), (-cbar[0], -cbar[1]))
                    res.append(r)
                columns.append((comp, mono, part))
                residual_cols.append(res)

    rowmap = {}
    rows = []
    for col, res in enumerate(residual_cols):
        for j, r in enumerate(res):
            for e, c in r.items():
                for part, val in ((0, c[0]), (1, c[1])):
                    if val:
                        key = (j, e, part)
                        if key not in rowmap:
                            rowmap[key] = len(rows)
                            rows.append({})
                        rows[rowmap[key]][col] = val
    kernel = eliminate_kernel(rows, len(columns))
    out = []
    for vec in kernel:
        out.append({columns[c]: x for c, x in vec.items() if x})
    return out


def rank(vectors):
    keys = sorted({k for v in vectors for k in v}, key=repr)
    idx = {k: i for i, k in enumerate(keys)}
    rows = [{idx[k]: Fraction(x) for k, x in v.items() if x} for v in vectors]
    return len(keys) - len(eliminate_kernel(rows, len(keys))) if keys else 0


__all__ = ["rank", "solve"]

if __name__ == "__main__":
    import sys
    import time

    for name in sys.argv[1:] or ["heisenberg"]:
        t = time.perf_counter()
        sol = solve(name)
        print(name, len(sol), f"{time.perf_counter() - t:.1f}s")
