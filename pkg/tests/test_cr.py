import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from craut.cr.model import (Bounds, a_poly, builtin_model, degree_bounds, load_model,
                            model_from_json, model_from_text, xi_expand)
from craut.cr.tangency import raw_tangency_system, tangency_system, truncation_lemma
from craut.errors import ModelValidationError
from craut.gaussrat import GaussRat, ONE, ZERO
from craut.lrg import ideal_membership, lrg

M1 = builtin_model("m1")
HEIS = builtin_model("heisenberg")
XI1 = xi_expand(M1)


def test_xi_table_examples():
    assert XI1.coeff(1, (1,), (1,)) == GaussRat(0, 2)
    assert XI1.coeff(3, (1,), (2,)) == GaussRat(2)
    assert XI1.coeff(3, (2,), (1,)) == GaussRat(-2)
    assert all(XI1.coeff(j, (0,), (0,)) == ZERO for j in range(1, 9))


def test_xi_table_roundtrip():
    for name in ("m1", "m2", "m3", "heisenberg"):
        m = builtin_model(name)
        t = xi_expand(m)
        assert tuple(t.polynomial(j) for j in range(1, m.k + 1)) == m.xi


def test_a_poly_examples():
    e = lambda j: tuple(int(i == j) for i in range(8))
    assert a_poly((0,), (0,), (0,) * 8, XI1) == ONE
    assert a_poly((1,), (0,), (0,) * 8, XI1) == ZERO
    assert a_poly((1,), (2,), e(2), XI1) == XI1.coeff(3, (1,), (2,))
    assert a_poly((2,), (2,), tuple(2 * x for x in e(0)), XI1) == GaussRat(-4)
    with pytest.raises(ValueError):
        a_poly((0,), (0,), (1,), XI1)


def _convolve(p, q):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, ZERO) + c1 * c2
    return {k: v for k, v in out.items() if v}


@settings(max_examples=60)
@given(st.sampled_from(["m1", "m2", "m3"]),
       st.lists(st.integers(0, 7), min_size=0, max_size=3))
def test_a_poly_matches_direct_product(name, picks):
    m = builtin_model(name)
    xi = xi_expand(m)
    gamma = [0] * m.k
    prod = {(0, 0): ONE}
    for j in picks:
        j %= m.k
        gamma[j] += 1
        factor = {(a[0], b[0]): c for (jj, a, b), c in xi.items() if jj == j + 1}
        prod = _convolve(prod, factor)
    span = sum(m.weights[j] for j in picks) + 1
    for a in range(span):
        for b in range(span):
            assert a_poly((a,), (b,), gamma, xi) == prod.get((a, b), ZERO)


def test_degree_bounds():
    b, w = degree_bounds(M1)
    assert w == (1, 2, 3, 3, 4, 4, 4, 5, 5)
    assert b.z_bound_z == 5 and b.w_bound == 5
    hb, hw = degree_bounds(HEIS)
    assert hw == (1, 2) and hb.z_bound_z == 2
    assert degree_bounds(M1, deg_z=3, deg_w=7)[0] == Bounds(3, (3,) * 8, 7)


def test_tangency_reference_entries():
    ts = tangency_system(M1)
    r = ts.ranking()
    assert ts.equation(1, (0,), (1,)).to_text(r) == "-2*i*Z0 - bar(W1_1)"
    # the printed entry is 2*i*Z0 + bar(W2_2), the same equation up to sign
    assert ts.equation(2, (0,), (2,)).to_text(r) == "-2*i*Z0 - bar(W2_2)"


def test_pure_w_coefficient_is_reality_condition():
    for m in (M1, HEIS):
        ts = tangency_system(m)
        r = ts.ranking()
        for j in range(1, m.k + 1):
            assert ts.equation(j, (0,), (0,)).to_text(r) == f"W{j}_0 - bar(W{j}_0)"


def test_truncation_lemma_m1():
    rep = truncation_lemma(M1, degree_bounds(M1)[0])
    assert not rep.unresolved
    assert "Z6" in rep.forced_zero
    assert [u for u in rep.kept if u.startswith("W6_")] == ["W6_0"]
    assert [u for u in rep.kept if u.startswith("W1_")] == ["W1_0", "W1_1"]
    assert [u for u in rep.kept if u.startswith("Z")] == [f"Z{t}" for t in range(6)]


def test_truncation_lemma_heisenberg():
    rep = truncation_lemma(HEIS, degree_bounds(HEIS)[0])
    assert "Z3" in rep.forced_zero
    assert rep.kept == ("Z0", "Z1", "Z2", "W1_0", "W1_1")


def test_system_sizes():
    ts = tangency_system(M1)
    assert len(ts.catalog) == 21 and len(ts.equations) >= 63
    raw = tangency_system(M1, apply_lemma=False)
    assert len(raw.catalog) == 44


@pytest.mark.parametrize("name", ["heisenberg", "m1", "m3"])
def test_conjugation_closure(name):
    """Swapping (mu, nu) conjugates an equation.

    Holomorphic coefficients are expanded around wbar, so equations with
    w-derivatives only agree with their mirror modulo the system; the
    derivative-free ones agree literally up to a unit.
    """
    m = builtin_model(name)
    ts = tangency_system(m)
    r = ts.ranking()
    G = lrg(ts.equations, r)
    literal = 0
    for (j, mu, nu), e in ts.index.items():
        other = ts.equation(j, nu, mu)
        if e.is_zero():
            assert other.is_zero()
            continue
        if all(d.op.is_identity() for d in e.terms):
            assert e.bar().monic(r) == other.monic(r)
            literal += 1
        assert ideal_membership(e.bar(), G)
        assert ideal_membership(other, G)
    assert literal > 0


def test_equations_are_constant_coefficient():
    ts = tangency_system(M1)
    assert all(isinstance(c, GaussRat) for e in ts.equations for c in e.terms.values())


def test_raw_system_contains_lemma_system():
    small = tangency_system(HEIS)
    raw = raw_tangency_system(HEIS, degree_bounds(HEIS)[0])
    assert len(raw.catalog) >= len(small.catalog)


# -- model files ---------------------------------------------------------------

def test_model_dsl_matches_fixture():
    m = model_from_text("w1 = 2*i*z*zb\n# comment\n", "h")
    assert m.xi == HEIS.xi
    assert m.weights == (2,)


def test_model_json_string_terms():
    m = model_from_json({"n": 1, "k": 1, "xi": ["2*i*z*zb"]})
    assert m.xi == HEIS.xi


def test_model_file_loading(tmp_path):
    p = tmp_path / "h.json"
    p.write_text(json.dumps(HEIS.to_json()))
    assert load_model(p).xi == HEIS.xi
    q = tmp_path / "h.txt"
    q.write_text("2*i*z*zb\n")
    assert load_model(q).xi == HEIS.xi
    with pytest.raises(FileNotFoundError):
        load_model(tmp_path / "missing.json")


@pytest.mark.parametrize("text, fragment", [
    ("2*z*zb", "reality"),
    ("z^2*zb + i*z", "degree 1"),
    ("0", "identically zero"),
])
def test_model_validation(text, fragment):
    with pytest.raises(ModelValidationError) as e:
        model_from_text(text)
    assert any(fragment in p for p in e.value.problems)


def test_model_validation_lists_every_problem():
    with pytest.raises(ModelValidationError) as e:
        model_from_text("2*z*zb\n0\n")
    assert len(e.value.problems) == 2


def test_model_json_errors():
    with pytest.raises(ModelValidationError):
        model_from_json({"n": 1})
    with pytest.raises(ModelValidationError):
        model_from_json({"n": 0, "k": 1, "xi": []})
    with pytest.raises(ModelValidationError):
        model_from_json({"n": 1, "k": 1, "xi": [[{"re": "1", "zbar": [1, 0], "z": [1]}]]})
