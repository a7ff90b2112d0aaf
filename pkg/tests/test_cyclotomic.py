import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from shiftdigits.config import ConfigurationError, override
from shiftdigits.cyclotomic import (
    CyclotomicNumber,
    OrderMismatchError,
    as_cyclotomic,
    cyclotomic_poly,
    from_residue_counts,
    xi_power,
)
from shiftdigits.digitmap import euler_phi


def xi(M, e=1):
    return xi_power(M, e)


@pytest.mark.parametrize("M, expected", [(1, (-1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_poly_examples(M, expected):
    assert cyclotomic_poly(M) == expected


def test_cyclotomic_poly_105_has_coefficient_minus_two():
    assert -2 in cyclotomic_poly(105)


@pytest.mark.parametrize("M", range(1, 40))
def test_cyclotomic_poly_degree_and_product(M):
    assert len(cyclotomic_poly(M)) - 1 == euler_phi(M)
    # x^M - 1 == prod over d | M of Phi_d, checked at a few integer points
    for x in (2, 3, -2):
        prod = 1
        for d in range(1, M + 1):
            if M % d == 0:
                prod *= sum(c * x**i for i, c in enumerate(cyclotomic_poly(d)))
        assert prod == x**M - 1


def test_xi_power_examples():
    assert xi(2) == -1
    assert xi(7, 0) == 1
    assert xi(4, 3) == -xi(4)
    assert str(xi(4, 3)) == "-xi"


def test_field_examples():
    a = xi(4)
    assert (a + (-a)).is_zero()
    assert a * a == -1
    assert (1 - a) * (1 + a) == 2
    assert (1 - xi(2)).inverse() == Fraction(1, 2)
    assert CyclotomicNumber.one(5).inverse() == 1
    assert a.inverse() == -a
    assert not CyclotomicNumber.one(9).is_zero()
    b = 1 - xi(9)
    assert (b * b.inverse() - 1).is_zero()


@pytest.mark.parametrize("M", range(2, 30))
def test_geometric_sums(M):
    for e in range(0, 2 * M + 1):
        total = sum((xi(M, d * e) for d in range(M)), CyclotomicNumber.zero(M))
        if e % M:
            assert total.is_zero()
        else:
            assert total == M


def test_order_rules():
    with pytest.raises(OrderMismatchError):
        xi(3) + xi(4)
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.zero(5).inverse()
    with override(M_cap=10):
        with pytest.raises(ConfigurationError):
            xi(11)
    assert xi(11) ** 11 == 1


def _elements(M):
    phi = euler_phi(M)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=phi, max_size=phi).map(lambda cs: CyclotomicNumber(M, cs))


orders = st.sampled_from([2, 3, 4, 5, 6, 7, 8, 9, 12, 15])


@given(orders.flatmap(lambda M: st.tuples(_elements(M), _elements(M), _elements(M))))
def test_field_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(orders, st.integers(-50, 50), st.integers(-50, 50))
def test_reduction_is_canonical(M, e, f):
    # two routes to xi**(e+f) must give identical coefficient tuples
    assert (xi(M, e) * xi(M, f)).coeffs == xi(M, e + f).coeffs
    assert (xi(M) ** (e + f)).coeffs == xi(M, e + f).coeffs


@given(orders.flatmap(_elements))
def test_json_roundtrip(a):
    assert CyclotomicNumber.from_json(a.to_json()) == a


@given(orders.flatmap(_elements))
def test_complex_embedding_agrees(a):
    # debug-only embedding, used here as an independent numerical cross-check
    z = cmath.exp(2j * cmath.pi / a.order)
    expected = sum(float(c) * z**i for i, c in enumerate(a.coeffs))
    assert abs(a.to_complex() - expected) < 1e-9


def test_rational_hash_and_equality():
    assert hash(as_cyclotomic(6, Fraction(3, 2))) == hash(Fraction(3, 2))
    assert as_cyclotomic(6, 2) == 2
    assert from_residue_counts(4, [1, 0, 1, 0]).is_zero()
    assert from_residue_counts(3, [2, 1, 1]) == 1


def test_json_format():
    assert (1 - xi(4)).to_json() == {"order": 4, "coeffs": ["1/1", "-1/1"]}
    assert (xi(3) / 2).to_json() == {"order": 3, "coeffs": ["0/1", "1/2"]}
