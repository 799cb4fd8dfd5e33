import pytest

from craut.diffalg import (DerivationOp, DiffRing, LinDiffPoly, NoLeaderError, ParseError,
                           Ranking, SignatureError, extended_ritt_reduce, is_irreducible,
                           lcd, parse_derivative, parse_poly, ritt_reduce)
from craut.gaussrat import I, ONE, GaussRat


@pytest.fixture
def ring():
    return DiffRing(["u", "v"], ["x", "y"])


def test_ring_layout(ring):
    names = [u.name for u in ring.indeterminates]
    assert names == ["u", "bar(u)", "v", "bar(v)"]
    assert ring.partner(ring.index("u")) == ring.index("bar(u)")
    assert ring.is_barred(ring.index("bar(v)"))


def test_real_ring_is_self_conjugate():
    r = DiffRing(["u"], ["x"], conjugates=False)
    k = r.index("u")
    assert r.partner(k) == k


def test_derivation_ops():
    a = DerivationOp([2, 0])
    b = DerivationOp([1, 1])
    assert a.lcm(b) == (2, 1)
    assert DerivationOp([1, 0]).divides(a)
    assert a.quotient(DerivationOp([1, 0])) == (1, 0)
    assert (a * b).order == 4


def test_lcd(ring):
    d1 = parse_derivative("u[2,0]", ring)
    d2 = parse_derivative("u[1,1]", ring)
    assert lcd(d1, d2) == parse_derivative("u[2,1]", ring)
    assert lcd(d1, parse_derivative("v[1,1]", ring)) is None


def test_orderly_vs_elimination(ring):
    a = parse_derivative("u[1,0]", ring)
    b = parse_derivative("v[2,0]", ring)
    orderly = Ranking(ring, "orderly", ["u", "v"])
    elim = Ranking(ring, "elim", ["u", "v"])
    assert orderly.compare(b, a) == 1
    assert elim.compare(a, b) == 1


def test_bar_sits_below_partner(ring):
    r = Ranking(ring, "orderly", ["u", "v"])
    u = parse_derivative("u[1,0]", ring)
    ub = parse_derivative("bar(u)[1,0]", ring)
    v = parse_derivative("v[1,0]", ring)
    assert r.compare(u, ub) == 1
    assert r.compare(ub, v) == 1


def test_ranking_blocks_must_cover(ring):
    with pytest.raises(ValueError):
        Ranking(ring, "orderly", ["u"])


def test_poly_roundtrip(ring):
    r = Ranking(ring)
    for text in ["-2*i*u - bar(v)", "u[1,0] - i*v", "(1/2+3*i)*u[0,2] + 1", "0"]:
        p = parse_poly(text, ring)
        assert parse_poly(p.to_text(r), ring) == p


def test_parse_errors_report_position(ring):
    with pytest.raises(ParseError) as e:
        parse_poly("u[1,0] + * v", ring)
    assert e.value.line == 1 and e.value.column == 10
    with pytest.raises(ParseError):
        parse_poly("w[1,0]", ring)
    with pytest.raises(ParseError):
        parse_poly("u[1,0,0]", ring)


def test_constant_has_no_leader(ring):
    with pytest.raises(NoLeaderError):
        LinDiffPoly.const(ring, 3).leader(Ranking(ring))


def test_signature_mismatch(ring):
    other = DiffRing(["u"], ["x", "y"])
    with pytest.raises(SignatureError):
        parse_poly("u", ring) + parse_poly("u", other)


def test_bar_involution_and_derivation(ring):
    p = parse_poly("(1+2*i)*u[1,0] - i*bar(v)", ring)
    assert p.bar().bar() == p
    assert p.bar() == parse_poly("(1-2*i)*bar(u)[1,0] + i*v", ring)
    assert p.derive([0, 1]).bar() == p.bar().derive([0, 1])


def test_monic(ring):
    r = Ranking(ring)
    p = parse_poly("2*i*u[1,0] + v", ring)
    m = p.monic(r)
    assert m.initial(r) == ONE
    assert m == p.scale(GaussRat(1) / (2 * I))


def test_ritt_reduce_by_derivative(ring):
    r = Ranking(ring)
    p = parse_poly("u[2,1]", ring)
    q = parse_poly("u[2,0] - u[1,1]", ring)
    rem, cert = ritt_reduce(p, [q], r)
    assert rem == parse_poly("u[1,2]", ring)
    assert p - rem == cert.replay(ring)


def test_reduce_by_itself(ring):
    r = Ranking(ring)
    p = parse_poly("u[1,0] - i*v + 3", ring)
    assert ritt_reduce(p, [p], r)[0].is_zero()


def test_extended_reduction_uses_bar(ring):
    r = Ranking(ring)
    p = parse_poly("bar(u)[1,0]", ring)
    q = parse_poly("u[1,0] - i*v", ring)
    assert ritt_reduce(p, [q], r)[0] == p
    rem, cert = extended_ritt_reduce(p, [q], r)
    assert rem == parse_poly("-i*bar(v)", ring)
    assert cert[0].conjugate
    assert is_irreducible(rem, [q], r, extended=True)


def test_constant_in_q_is_inconsistent(ring):
    r = Ranking(ring)
    rem, cert = ritt_reduce(parse_poly("u[3,3]", ring), [LinDiffPoly.const(ring, 2)], r)
    assert rem.is_zero() and cert.inconsistent and not cert


def test_ranking_examples(ring):
    r = Ranking(ring, "orderly", ["u", "v"])
    d = lambda t: parse_derivative(t, ring)
    assert r.compare(d("u[1,0]"), d("v[1,1]")) == -1
    assert r.compare(d("v[0,1]"), d("v[1,1]")) == -1
    assert r.compare(d("u[0,2]"), d("v[2,0]")) == 1


def test_leader_examples(ring):
    r = Ranking(ring, "orderly", ["u", "v"])
    lead = parse_poly("u[0,2] - v[2,0] - v[1,1]", ring).leader(r)
    assert lead == parse_derivative("u[0,2]", ring)
    assert parse_poly("v[0,2] - v", ring).leader(r) == parse_derivative("v[0,2]", ring)
    assert parse_poly("3*u", ring).leader(r) == parse_derivative("u", ring)


def test_lcd_examples(ring):
    d = lambda t: parse_derivative(t, ring)
    assert lcd(d("u[2,0]"), d("u[0,2]")) == d("u[2,2]")
    assert lcd(d("u[1,0]"), d("u[1,0]")) == d("u[1,0]")


def test_derive_examples(ring):
    p = parse_poly("u[2,0] - u[1,1]", ring)
    assert p.derive([0, 1]) == parse_poly("u[2,1] - u[1,2]", ring)
    assert p.derive([0, 0]) == p
    assert LinDiffPoly.const(ring, 5).derive([1, 0]).is_zero()


def test_bar_example(ring):
    assert parse_poly("u[1,0] - i*v", ring).bar() == parse_poly("bar(u)[1,0] + i*bar(v)", ring)


def test_ritt_reduce_examples(ring):
    r = Ranking(ring, "orderly", ["u", "v"])
    rem, _ = ritt_reduce(parse_poly("u[2,1]", ring), [parse_poly("u[2,0] - u[1,1]", ring)], r)
    assert rem == parse_poly("u[1,2]", ring)
    p = parse_poly("u[0,2] - v[1,1]", ring)
    rem, cert = ritt_reduce(p, [parse_poly("v[2,0]", ring)], r)
    assert rem == p and not cert
    rem, cert = ritt_reduce(p, [p], r)
    assert rem.is_zero() and len(cert) == 1
    assert cert[0].theta == DerivationOp([0, 0]) and cert[0].coeff == ONE


def test_extended_examples(ring):
    r = Ranking(ring)
    p = parse_poly("bar(u)[2,0]", ring)
    assert extended_ritt_reduce(p, [parse_poly("u[1,0]", ring)], r)[0].is_zero()
    assert extended_ritt_reduce(p, [], r)[0] == p
