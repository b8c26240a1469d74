from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_cox.groebner import groebner_basis, is_groebner, normal_form
from toric_cox.polynomials import (
    MonomialOrder,
    PolynomialSyntaxError,
    format_polynomial,
    parse_polynomial,
    parse_vector,
    poly_mul,
    poly_to_vec,
    vec_add,
)

ORDER = MonomialOrder((1, 1, 1))


def P(text, n=3):
    return parse_polynomial(text, n)


def test_parse_basic():
    assert P("3/2*Z_0^2*Z_1 - Z_2 + 4") == {(2, 1, 0): Fraction(3, 2), (0, 0, 1): -1, (0, 0, 0): 4}
    assert P("Z_0*Z_0") == {(2, 0, 0): 1}
    assert P("Z_1^-2") == {(0, -2, 0): 1}
    assert P("Z_1^(-2)*Z_0^(3)") == {(3, -2, 0): 1}
    assert P("Z_0 - Z_0") == {}


@pytest.mark.parametrize("bad", ["", "Z_0 +", "+ - ", "Z_3", "Z_0**2", "x", "Z_0 * * Z_1", "(-)(-)"])
def test_parse_errors(bad):
    with pytest.raises(PolynomialSyntaxError):
        P(bad)


terms = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3),
                        st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool), max_size=5)


@given(terms)
def test_format_parse_roundtrip(f):
    assert P(format_polynomial(f)) == f
    assert P(format_polynomial(f, ORDER)) == f


def test_parse_vector():
    v = parse_vector(["Z_0", "0", "2*Z_1"], 2)
    assert v == {(0, (1, 0)): 1, (2, (0, 1)): 2}


def test_known_groebner_basis():
    G = groebner_basis([poly_to_vec(P("Z_0^2 - Z_0*Z_1")), poly_to_vec(P("Z_0*Z_1"))], ORDER)
    assert sorted(tuple(g) for g in G) == sorted([((0, (2, 0, 0)),), ((0, (1, 1, 0)),)])


def test_twisted_cubic():
    n = 4
    o = MonomialOrder((1, 1, 1, 1))
    gens = [poly_to_vec(parse_polynomial(t, n)) for t in
            ["Z_0*Z_2 - Z_1^2", "Z_1*Z_3 - Z_2^2", "Z_0*Z_3 - Z_1*Z_2"]]
    G = groebner_basis(gens, o)
    assert is_groebner(G, o)
    assert len(G) == 3


@given(st.lists(terms.filter(bool), min_size=1, max_size=3), terms)
def test_ideal_membership_of_combinations(gens, h):
    vecs = [poly_to_vec(g) for g in gens]
    G = groebner_basis(vecs, ORDER)
    assert is_groebner(G, ORDER)
    combo = {}
    for g in gens:
        combo = vec_add(combo, poly_to_vec(poly_mul(g, h)))
    assert normal_form(combo, G, ORDER) == {}
    for g in vecs:
        assert normal_form(g, G, ORDER) == {}


def test_module_groebner():
    # submodule of S^2 generated by (Z_0, Z_1) and (Z_1, 0)
    v1 = vec_add(poly_to_vec(P("Z_0"), 0), poly_to_vec(P("Z_1"), 1))
    v2 = poly_to_vec(P("Z_1"), 0)
    G = groebner_basis([v1, v2], ORDER)
    assert is_groebner(G, ORDER)
    target = vec_add(poly_to_vec(P("Z_0*Z_1"), 0), poly_to_vec(P("Z_1^2"), 1))
    assert normal_form(target, G, ORDER) == {}
