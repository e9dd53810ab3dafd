from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from toeplitz_qf.basis import (
    LaurentMatrixElement,
    from_laurent_matrix,
    laurent_monomial,
    matrix_unit,
    to_laurent_matrix,
)
from toeplitz_qf.core import E, ONE, ToeplitzElement, mul

mono = ToeplitzElement.monomial


def test_images_of_basis_elements():
    assert from_laurent_matrix(matrix_unit(0, 0)) == E
    assert from_laurent_matrix(laurent_monomial(0)) == ONE
    x = laurent_monomial(-2) + matrix_unit(1, 3)
    assert from_laurent_matrix(x) == mono(0, 2) + mono(1, 3) - mono(2, 4)


def test_monomials_in_laurent_coordinates():
    assert to_laurent_matrix(mono(2, 1)) == laurent_monomial(1) - matrix_unit(1, 0)
    assert to_laurent_matrix(ONE) == laurent_monomial(0)
    assert to_laurent_matrix(mono(1, 1)) == laurent_monomial(0) - matrix_unit(0, 0)


def test_matrix_unit_closed_form():
    for i in range(5):
        for j in range(5):
            assert from_laurent_matrix(matrix_unit(i, j)) == mul(mul(mono(i, 0), E), mono(0, j))


def test_printing():
    assert str(laurent_monomial(1) - matrix_unit(1, 0)) == "z^1 - e_{1,0}"
    assert str(LaurentMatrixElement()) == "0"


@given(st.integers(0, 20), st.integers(0, 20))
def test_round_trip_on_monomials(i, j):
    assert from_laurent_matrix(to_laurent_matrix(mono(i, j))) == mono(i, j)


@given(st.integers(0, 20), st.integers(0, 20), st.integers(-20, 20))
def test_round_trip_on_laurent_side(i, j, p):
    x = matrix_unit(i, j) + laurent_monomial(p, 3)
    assert to_laurent_matrix(from_laurent_matrix(x)) == x


@given(elements(), elements())
def test_basis_change_is_linear(a, b):
    assert to_laurent_matrix(a + b) == to_laurent_matrix(a) + to_laurent_matrix(b)


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_matrix_units_multiply_like_matrices(i, j, k, l):
    lhs = mul(from_laurent_matrix(matrix_unit(i, j)), from_laurent_matrix(matrix_unit(k, l)))
    expected = from_laurent_matrix(matrix_unit(i, l)) if j == k else ToeplitzElement.zero()
    assert lhs == expected
