from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kerovmaps.errors import InvalidInputError
from kerovmaps.ratpoly import (
    Monomial,
    RationalPolynomial,
    c_polynomial,
    coefficient,
    expand_c_to_r,
    gr_fixture,
    kerov_fixture,
    parse_monomial,
    parse_polynomial,
    variable,
)

P = parse_polynomial
R2, C2 = variable(2, "R"), variable(2, "C")


def mono(*indices, alphabet="R"):
    return Monomial.from_indices(indices, alphabet)


def test_add_examples():
    assert (R2 + (-R2)).is_zero()
    assert str(P("R4 + R2") + P("5*R3")) == "R2 + 5*R3 + R4"
    s = kerov_fixture(3) + kerov_fixture(4)
    assert coefficient(s, mono(4)) == 1 and coefficient(s, mono(5)) == 1


def test_mul_examples():
    assert C2 * C2 == P("C2^2")
    assert (C2 * C2).alphabet == "C"
    assert R2 * R2 == P("R2^2")
    assert c_polynomial(2) * c_polynomial(2) == P("R2^2")


def test_coefficient_examples():
    assert coefficient(kerov_fixture(5), mono(2, 2)) == 5
    assert coefficient(kerov_fixture(7), mono(2, 2, 2)) == 14
    assert coefficient(RationalPolynomial.zero(), mono(3)) == 0


def test_c_polynomial_examples():
    assert c_polynomial(0) == 1
    assert str(c_polynomial(1)) == "0"
    assert str(c_polynomial(2)) == "R2"
    assert c_polynomial(4) == P("3*R4 + R2^2")
    assert str(c_polynomial(6)) == "R2^3 + 6*R2*R4 + 4*R3^2 + 5*R6"


def test_fixtures():
    assert kerov_fixture(4) == P("R5 + 5*R3")
    assert kerov_fixture(6) == P("R7 + 35*R5 + 35*R3*R2 + 84*R3")
    assert kerov_fixture(1) == R2
    assert gr_fixture(4) == P("5/2*C3")
    assert coefficient(gr_fixture(7), mono(2, 2, alphabet="C")) == Fraction(203, 3)
    assert str(gr_fixture(7)) == "203/3*C2^2 + 180*C2 + 469/3*C4 + 14*C6"
    assert gr_fixture(2).is_zero()
    with pytest.raises(InvalidInputError):
        kerov_fixture(8)


def test_expand_examples():
    assert expand_c_to_r(C2) == R2
    assert expand_c_to_r(gr_fixture(5)) == P("15*R4 + 5*R2^2 + 8*R2")
    assert expand_c_to_r(gr_fixture(5)) == kerov_fixture(5) - variable(6)
    assert expand_c_to_r(RationalPolynomial.zero("C")).is_zero()


@pytest.mark.parametrize("k", range(1, 8))
def test_table_identity(k):
    assert expand_c_to_r(gr_fixture(k)) + variable(k + 1) == kerov_fixture(k)


@pytest.mark.parametrize("i,j", [(i, j) for i in range(2, 7) for j in range(i + 1, 7)])
def test_mixed_square_coefficients(i, j):
    prod = c_polynomial(i) * c_polynomial(j)
    assert coefficient(prod, mono(i, j)) == (i - 1) * (j - 1)
    assert coefficient(prod, mono(i + j)) == 0
    assert coefficient(c_polynomial(i + j), mono(i, j)) == 2 * (i - 1) * (j - 1)
    assert coefficient(c_polynomial(i + j), mono(i + j)) == i + j - 1


@pytest.mark.parametrize("j", range(2, 6))
def test_pure_square_coefficients(j):
    assert coefficient(c_polynomial(2 * j), mono(j, j)) == (j - 1) ** 2
    assert coefficient(c_polynomial(2 * j), mono(2 * j)) == 2 * j - 1


def test_printing_order_and_signs():
    assert str(P("R6 + 15*R4 + 5*R2^2 + 8*R2")) == "5*R2^2 + 8*R2 + 15*R4 + R6"
    assert str(P("R2 - R3")) == "R2 - R3"
    assert str(-R2) == "-R2"
    assert str(P("1/2")) == "1/2"


def test_parse_errors():
    for bad in ["", "R1", "R2^0", "R2*C3", "X2", "R2^"]:
        with pytest.raises(InvalidInputError):
            parse_monomial(bad)
    with pytest.raises(InvalidInputError):
        P("R2 + C3")
    with pytest.raises(InvalidInputError):
        R2 + C2


def test_zero_coefficients_dropped():
    p = RationalPolynomial({mono(2): Fraction(0), mono(3): Fraction(1, 2)})
    assert list(p.terms) == [mono(3)]
    assert p.terms[mono(3)].denominator == 2


coefs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monos = st.lists(st.integers(2, 5), max_size=3).map(lambda xs: Monomial.from_indices(xs))
polys = st.dictionaries(monos, coefs, max_size=4).map(lambda d: RationalPolynomial(d))


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys)
def test_print_parse_round_trip(a):
    assert P(str(a), "R") == a
