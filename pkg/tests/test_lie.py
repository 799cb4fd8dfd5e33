import random
from fractions import Fraction

import pytest

from conftest import solved
from craut.cr.model import ModelSpec, builtin_model
from craut.errors import ClosureError
from craut.lie.fields import HoloVectorField, bracket, real_span_rank, verify_tangency
from craut.lie.reference import compare_tables, load_reference
from craut.lie.solve import solve_autcr
from craut.lie.structure import (bracket_coeffs, change_of_basis, derived_series_dims,
                                 format_combination, grading, is_antisymmetric,
                                 jacobi_defect, parse_combination, render_table,
                                 structure_constants)

M1 = builtin_model("m1")


@pytest.fixture(scope="module")
def ref1():
    return load_reference("m1")


@pytest.fixture(scope="module")
def table1(ref1):
    return structure_constants(ref1.basis)


def field(text, n=1, k=8):
    return HoloVectorField.parse(text, n, k)


def test_verify_tangency_examples(ref1):
    assert verify_tangency(field("d/dw1"), M1)
    assert verify_tangency(ref1.basis[10], M1)
    assert not verify_tangency(field("z*d/dz"), M1)


def test_reference_bases_are_tangent():
    for name in ("m1", "m2", "m3"):
        ref = load_reference(name)
        m = builtin_model(name)
        assert all(verify_tangency(X, m) for X in ref.basis)


def test_field_text_roundtrip(ref1):
    for X in ref1.basis:
        assert HoloVectorField.parse(X.to_text(), 1, 8) == X
        assert HoloVectorField.from_mapping(1, 8, X.to_mapping()) == X


def test_bracket_examples(ref1, table1):
    X = ref1.basis
    assert bracket(X[0], X[0]).is_zero()
    assert bracket_coeffs(table1, 0, 8) == {0: 2}
    assert bracket_coeffs(table1, 1, 9) == {2: 1}
    assert bracket_coeffs(table1, 1, 10) == {3: 3, 5: 2}
    assert format_combination(bracket_coeffs(table1, 1, 10)) == "3*X4 + 2*X6"


def test_bracket_signature_mismatch():
    with pytest.raises(ValueError):
        field("d/dz").bracket(HoloVectorField.parse("d/dz", 1, 1))


def test_m2_bracket_example():
    ref = load_reference("m2")
    t = structure_constants(ref.basis)
    assert bracket_coeffs(t, 5, 10) == {6: 6}


def test_abelian_table_and_single_layer():
    basis = [field("d/dw1"), field("d/dw2")]
    t = structure_constants(basis)
    assert all(not v for v in t.values())
    g = grading([field("d/dw1")], (1, 2, 3, 3, 4, 4, 4, 5, 5))
    assert g.layer_dims() == {-2: 1} and g.ok


def test_closure_error():
    with pytest.raises(ClosureError) as e:
        structure_constants([field("d/dz"), field("z^2*d/dz")])
    assert e.value.pair == (1, 2)


def test_table_axioms_for_computed_bases():
    for name in ("m1", "m2", "m3"):
        alg = solved(name).algebra
        t = structure_constants(alg.basis)
        assert is_antisymmetric(t, alg.dimension)
        assert jacobi_defect(t, alg.dimension) == []


def test_grading_examples():
    g = grading(solved("m1").algebra.basis, solved("m1").algebra.weights)
    assert [g.layer_dims()[d] for d in range(-5, 1)] == [2, 3, 2, 1, 2, 2]
    ref3 = load_reference("m3")
    g3 = grading(ref3.basis, solved("m3").algebra.weights, structure_constants(ref3.basis))
    assert g3.ok and g3.layers[0] == [8]


def test_grading_reports_inhomogeneous_fields():
    g = grading([field("d/dz + z*d/dz")], (1, 2, 3, 3, 4, 4, 4, 5, 5))
    assert g.failures == [0] and not g.ok


def test_change_of_basis(ref1):
    alg = solved("m1").algebra
    assert change_of_basis(alg.basis, ref1.basis) is not None
    assert change_of_basis(alg.basis, ref1.basis[:-1]) is None
    dup = ref1.basis[:-1] + [ref1.basis[0]]
    assert change_of_basis(alg.basis, dup) is None


def _random_change(basis, rng):
    """Unitriangular integer recombination, hence invertible."""
    n = len(basis)
    perm = list(range(n))
    rng.shuffle(perm)
    out = []
    for i in range(n):
        X = basis[perm[i]]
        for j in range(i + 1, n):
            c = rng.randint(-2, 2)
            if c:
                X = X + basis[perm[j]].scale(Fraction(c))
        out.append(X)
    return out


@pytest.mark.parametrize("name", ["m1", "m3"])
def test_basis_change_invariance(name):
    alg = solved(name).algebra
    rng = random.Random(7)
    base_series = derived_series_dims(alg.basis)
    for _ in range(3):
        new = _random_change(alg.basis, rng)
        assert real_span_rank(new) == alg.dimension
        assert derived_series_dims(new) == base_series
        # homogeneous components of the new basis span the same layers
        from craut.lie.solve import graded_basis

        g = grading(graded_basis(new, alg.weights), alg.weights)
        assert g.layer_dims() == grading(alg.basis, alg.weights).layer_dims()


@pytest.mark.parametrize("name, factor", [("heisenberg", Fraction(3, 2)), ("m3", Fraction(2))])
def test_scaling_xi_keeps_invariants(name, factor):
    m = builtin_model(name)
    scaled = ModelSpec(m.n, m.k, tuple(p.scale(factor) for p in m.xi), name + "-scaled")
    a = solved(name).algebra
    b = solve_autcr(scaled, stabilize=False).algebra
    assert a.dimension == b.dimension
    assert grading(a.basis, a.weights).layer_dims() == grading(b.basis, b.weights).layer_dims()


def test_combination_text():
    c = {3: Fraction(3), 5: Fraction(2)}
    assert parse_combination(format_combination(c), 12) == c
    assert format_combination({1: Fraction(-1)}) == "-X2"
    assert format_combination({}) == "0"
    assert parse_combination("1/2*X1 - X3", 4) == {0: Fraction(1, 2), 2: Fraction(-1)}


def test_render_table_shape(table1):
    text = render_table(table1, 12)
    assert len(text.splitlines()) == 14
    assert "3*X4 + 2*X6" in text


def test_compare_tables_reports_mismatch(table1):
    printed = dict(table1)
    printed[(0, 8)] = {0: Fraction(1)}
    mm = compare_tables(table1, printed, 12)
    assert len(mm) == 1 and str(mm[0]) == "[X1, X9]: computed 2*X1, printed X1"
