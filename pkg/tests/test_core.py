from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import elements, term_dicts
from toeplitz_qf.core import (
    E,
    E_PRIME,
    ONE,
    U,
    V,
    Monomial,
    ToeplitzElement,
    add,
    involution,
    monomial_product,
    mul,
    neg,
    oracle_check_mul,
    scale,
    to_matrix,
)

mono = ToeplitzElement.monomial


def test_uv_is_one():
    assert mul(U, V) == ONE
    assert mul(V, U) == E_PRIME
    assert mul(V, U) != ONE


def test_monomial_rule_branches():
    assert mul(mono(2, 1), mono(3, 2)) == mono(4, 2)
    assert mul(mono(1, 3), mono(1, 0)) == mono(1, 2)
    assert mul(mono(0, 3), mono(1, 2)) == mono(0, 4)


def test_identity_and_idempotents():
    a = ToeplitzElement({(2, 1): 3, (0, 4): Fraction(-1, 2)})
    assert mul(ONE, a) == a == mul(a, ONE)
    assert mul(E, E) == E
    assert mul(E_PRIME, E_PRIME) == E_PRIME
    assert mul(E, E_PRIME) == 0 == mul(E_PRIME, E)
    assert add(ONE, neg(E_PRIME)) == E


def test_e_annihilators():
    assert mul(U, E) == 0
    assert mul(E, V) == 0


def test_zero_results():
    assert add(V, neg(V)) == 0
    assert scale(0, mono(3, 1)) == 0
    assert ToeplitzElement.zero().is_zero()


def test_involution_examples():
    assert involution(V) == U
    assert involution(mono(2, 3)) == mono(3, 2)


def test_no_negative_exponents():
    with pytest.raises(ValueError):
        mono(-1, 0)


def test_rational_coefficients_are_exact():
    a = ToeplitzElement({(1, 0): Fraction(1, 3)})
    b = ToeplitzElement({(0, 1): Fraction(3, 1)})
    assert mul(b, a) == ONE


def test_printing():
    assert str(ToeplitzElement.zero()) == "0"
    assert str(mono(2, 1)) == "v^2*u"
    assert str(ToeplitzElement({(0, 0): -3, (1, 1): 3, (2, 1): 1})) == "-3 + 3*v*u + v^2*u"
    assert str(ToeplitzElement({(1, 0): Fraction(-1, 2)})) == "-1/2*v"
    assert str(Monomial(0, 0)) == "1"


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_monomial_product_matches_word_reduction(i, j, k, l):
    assert tuple(monomial_product(Monomial(i, j), Monomial(k, l))) == oracles.reduce_word(
        oracles.word(i, j) + oracles.word(k, l)
    )


@given(term_dicts(), term_dicts())
def test_product_matches_word_oracle(a, b):
    expected = ToeplitzElement(oracles.product(a, b))
    assert mul(ToeplitzElement(a), ToeplitzElement(b)) == expected


@given(elements(4, 3), elements(4, 3), elements(4, 3))
def test_associative(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(elements(), elements(), elements())
def test_distributive(a, b, c):
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert mul(a + b, c) == mul(a, c) + mul(b, c)


@given(elements(), elements())
def test_involution_is_antihomomorphism(a, b):
    assert involution(mul(a, b)) == mul(involution(b), involution(a))
    assert involution(involution(a)) == a


@given(elements(), st.fractions(max_denominator=5))
def test_scalars_commute(a, c):
    assert mul(scale(c, ONE), a) == scale(c, a) == mul(a, scale(c, ONE))


def test_matrix_examples():
    m = to_matrix(E, 4).entries
    assert m[0][0] == 1 and sum(abs(x) for row in m for x in row) == 1
    ident = to_matrix(ONE, 6).entries
    assert ident == [[int(r == c) for c in range(6)] for r in range(6)]
    m = to_matrix(mono(2, 1), 5).entries
    assert m == [[int(r == c + 1 and c >= 1) for c in range(5)] for r in range(5)]


@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 12))
def test_matrix_matches_column_oracle(i, j, n):
    assert to_matrix(mono(i, j), n).entries == oracles.monomial_matrix(i, j, n)


def test_oracle_examples():
    res = oracle_check_mul(mul(U, V) - ONE, mono(3, 2), 8)
    assert res.passed
    res = oracle_check_mul(mono(3, 0), mono(0, 3), 16)
    assert res.passed and mul(mono(3, 0), mono(0, 3)) == mono(3, 3)


def test_oracle_rejects_small_dimension():
    res = oracle_check_mul(mono(4, 0), mono(0, 4), 8)
    assert not res.passed and res.error


def test_oracle_detects_wrong_product():
    from toeplitz_qf import core

    lhs = core.to_matrix(mono(0, 0), 8)
    rhs = core.to_matrix(V, 8) @ core.to_matrix(U, 8)
    assert lhs.first_mismatch(rhs, 8) == (0, 0, 1, 0)


@given(elements(6, 4), elements(6, 4))
def test_oracle_on_random_pairs(a, b):
    assert oracle_check_mul(a, b, 14).passed
