from fractions import Fraction

import pytest
from hypothesis import given

from conftest import elements
from toeplitz_qf.core import E, ONE, ToeplitzElement
from toeplitz_qf.parser import Atom, ParseError, parse, parse_ast

mono = ToeplitzElement.monomial


def test_examples():
    assert parse("v^2*u - 3*e") == mono(2, 1) - ToeplitzElement.scalar(3) + mono(1, 1, 3)
    assert parse("1") == ONE
    assert parse("u*v") == ONE
    assert parse("e") == E


def test_coefficients_and_whitespace():
    assert parse(" -1/2 * v^3 + 2*u ") == ToeplitzElement({(3, 0): Fraction(-1, 2), (0, 2 - 1): 2})
    assert parse("0") == 0
    assert parse("v^0") == ONE
    assert parse("3*1") == ToeplitzElement.scalar(3)


def test_ast_shape():
    ast = parse_ast("2*v^3*u - e")
    assert [t.coeff for t in ast.terms] == [2, -1]
    assert ast.terms[0].atoms == (Atom("v", 3), Atom("u", 1))


@pytest.mark.parametrize(
    "text, pos",
    [("v^-2", 2), ("3/0", 2), ("v +", 3), ("x", 0), ("v^", 2), ("2*3", 2), ("v u", 2), ("e^2", 1), ("", 0)],
)
def test_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos == pos


def test_negative_exponent_message():
    with pytest.raises(ParseError, match="negative exponent"):
        parse("u^-1")


@given(elements(6, 5))
def test_printed_form_round_trips(a):
    assert parse(str(a)) == a
