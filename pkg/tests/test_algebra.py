import random

import pytest

from ramval.algebra import (
    DivisibleByX,
    Fq,
    IndeterminateOrder,
    LocalElem,
    NotAUnit,
    NotMonic,
    ParseError,
    Poly2,
    XSeries,
    invert_unit,
    parse_poly,
)

F2 = Fq(2)
F3 = Fq(3)


def random_poly(field, rng, max_deg=8, max_terms=8):
    out = Poly2.zero(field)
    for _ in range(rng.randint(1, max_terms)):
        c = field.of_int(rng.randrange(field.q))
        out = out + Poly2.monomial(field, rng.randint(0, max_deg), rng.randint(0, max_deg), c)
    return out


def random_monic(field, rng, deg, max_xdeg=4):
    out = Poly2.monomial(field, 0, deg)
    for j in range(deg):
        c = field.of_int(rng.randrange(field.q))
        out = out + Poly2.monomial(field, rng.randint(0, max_xdeg), j, c)
    return out


# -- field contexts -----------------------------------------------------------


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_field_axioms_spot(p, m):
    fld = Fq(p, m)
    elems = fld.elements()
    for a in elems:
        assert fld.add(a, fld.zero) == a
        assert fld.mul(a, fld.one) == a
        if a != fld.zero:
            assert fld.mul(a, fld.inv(a)) == fld.one
    # commutativity and distributivity on a sample
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (elems[rng.randrange(len(elems))] for _ in range(3))
        assert fld.mul(a, b) == fld.mul(b, a)
        assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))


def test_frobenius_fixes_prime_field():
    fld = Fq(3, 2)
    for a in fld.elements():
        # x -> x^(p^m) is the identity on F_q
        b = a
        for _ in range(fld.m):
            b = fld.frob(b)
        assert b == a


# -- polynomial arithmetic ----------------------------------------------------


def test_poly_add_trivial():
    assert Poly2.x(F2) + Poly2.y(F2) == parse_poly("x + y", F2)


def test_poly_square_char2():
    v = parse_poly("y^2 - x*y", F2)  # y^p - x^c y with p=2, c=1
    assert v * v == parse_poly("y^4 + x^2*y^2", F2)


def test_poly_mul_zero():
    f = parse_poly("y^3 + x", F3)
    assert (f * Poly2.zero(F3)).is_zero()


def test_pow_matches_repeated_mul():
    rng = random.Random(5)
    for fld in (F2, F3):
        for _ in range(30):
            f = random_poly(fld, rng, max_deg=4, max_terms=4)
            acc = Poly2.one(fld)
            for e in range(6):
                assert f**e == acc
                acc = acc * f


def test_frobenius_additive():
    rng = random.Random(11)
    for fld in (F2, F3):
        p = fld.p
        for _ in range(100):
            f = random_poly(fld, rng)
            g = random_poly(fld, rng)
            assert (f + g) ** p == f**p + g**p


def test_divrem_trivial():
    q, r = parse_poly("y^3", F2).divrem_y(Poly2.y(F2))
    assert q == parse_poly("y^2", F2) and r.is_zero()


def test_divrem_key_example():
    q, r = parse_poly("y^4", F2).divrem_y(parse_poly("y^4 - x", F2))
    assert q == Poly2.one(F2) and r == Poly2.x(F2)


def test_divrem_degree_too_small():
    q, r = parse_poly("x^5", F2).divrem_y(Poly2.y(F2))
    assert q.is_zero() and r == parse_poly("x^5", F2)


def test_divrem_requires_monic():
    with pytest.raises(NotMonic):
        parse_poly("y^2", F2).divrem_y(parse_poly("x*y + 1", F2))


def test_divrem_roundtrip_random():
    rng = random.Random(17)
    for fld in (F2, F3):
        for _ in range(500):
            f = random_poly(fld, rng, max_deg=8)
            g = random_monic(fld, rng, rng.randint(1, 4))
            q, r = f.divrem_y(g)
            assert q * g + r == f
            assert r.deg_y() < g.deg_y()


def test_invert_unit_one():
    assert invert_unit(Poly2.one(F3), 5).poly == Poly2.one(F3)


def test_invert_unit_geometric():
    inv = invert_unit(parse_poly("1 - x", F2), 4)
    assert inv.poly == parse_poly("1 + x + x^2 + x^3", F2)


def test_invert_unit_rejects_non_unit():
    with pytest.raises(NotAUnit):
        invert_unit(Poly2.y(F2), 4)
    with pytest.raises(NotAUnit):
        invert_unit(parse_poly("1 + y", F2), 4)  # not a unit of k[y][[x]]


def test_invert_unit_random():
    rng = random.Random(23)
    for fld in (F2, F3):
        for _ in range(60):
            m = rng.randint(2, 32)
            u = Poly2.const(fld, rng.randrange(1, fld.q))
            for _ in range(rng.randint(1, 5)):
                u = u + Poly2.monomial(
                    fld, rng.randint(1, 6), rng.randint(0, 3), fld.of_int(rng.randrange(fld.q))
                )
            prod = XSeries(u, m) * invert_unit(u, m)
            assert prod == XSeries(Poly2.one(fld), m)


def test_x_order_examples():
    assert parse_poly("x^3*y + x^5", F2).x_order() == 3
    assert parse_poly("y^2 - x*y", F2).x_order() == 0
    with pytest.raises(IndeterminateOrder):
        Poly2.zero(F2).x_order()


def test_x_order_additive():
    rng = random.Random(29)
    for _ in range(200):
        f = random_poly(F3, rng)
        g = random_poly(F3, rng)
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).x_order() == f.x_order() + g.x_order()


def test_y_order_mod_x_examples():
    assert parse_poly("y^2 - x*y", F2).y_order_mod_x() == 2
    assert parse_poly("1 + y", F2).y_order_mod_x() == 0
    # middle-chart second parameter rewritten in the top chart, p=2, c=1
    v = parse_poly("y^2 - x*y", F2)
    u2 = v * v - Poly2.x(F2)
    assert u2.y_order_mod_x() == 4
    with pytest.raises(DivisibleByX):
        parse_poly("x*y", F2).y_order_mod_x()


def test_series_zero_order_indeterminate():
    s = XSeries(parse_poly("x^4", F2), 3)  # zero mod x^3
    assert s.is_zero()
    with pytest.raises(IndeterminateOrder):
        s.x_order()


def test_local_elem_arithmetic():
    # u = x^2 / (1 - x) over F2
    u = LocalElem(parse_poly("x^2", F2), parse_poly("1 - x", F2))
    assert u.x_order() == 2
    sq = u * u
    assert sq.x_order() == 4
    assert (u - u).is_zero()
    s = u.series(6)
    assert s.poly == parse_poly("x^2 + x^3 + x^4 + x^5", F2)


def test_local_elem_compose_keeps_unit_denominator():
    u = LocalElem(parse_poly("x^2", F3), parse_poly("1 - x", F3))
    sub_x = LocalElem(parse_poly("x^3", F3) * parse_poly("y + 1", F3))
    sub_y = LocalElem(Poly2.x(F3))
    img = u.compose(sub_x, sub_y)
    assert img.x_order() == 6
    assert img.den.is_unit()


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_poly("y^2 + $", F2)
    assert "position" in str(err.value)


def test_parse_aliases_and_coefficients():
    assert parse_poly("u^2 + 2*v", F3) == parse_poly("x^2 + 2*y", F3)
    assert parse_poly("3*y + 4", F3) == parse_poly("1", F3)
    assert parse_poly("y - y", F3).is_zero()


def test_to_str_roundtrip():
    rng = random.Random(31)
    for _ in range(100):
        f = random_poly(F3, rng)
        assert parse_poly(f.to_str(), F3) == f
