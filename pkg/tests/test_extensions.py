import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from toeplitz_qf.core import ONE, U, V, ToeplitzElement, mul
from toeplitz_qf.extensions import (
    CocycleSpec,
    ExtAlgebra,
    ExtElement,
    check_splitting_batch,
    derivation_to_hom,
    ext_mul,
    random_cocycle,
    split_extension,
)
from toeplitz_qf.omega1 import BIMODULES, d_universal, der_from_pair
from toeplitz_qf.parser import parse

mono = ToeplitzElement.monomial
zero = ToeplitzElement.zero()
XI_V = CocycleSpec({(1, 0): mono(1, 1)})
cocycles = st.integers(0, 10**6).map(lambda s: random_cocycle(random.Random(s)))


def test_xi_must_be_normalized():
    with pytest.raises(ValueError):
        CocycleSpec({(0, 0): V})
    assert CocycleSpec({(0, 0): zero}).xi == {}


def test_cocycle_json_round_trip():
    obj = {"xi": [{"monomial": [1, 0], "value": "v*u"}, {"monomial": [0, 2], "value": "3 - e"}]}
    spec = CocycleSpec.from_json(obj, parse)
    assert spec.xi[(0, 2)] == mono(1, 1) + ToeplitzElement.scalar(2)
    assert CocycleSpec.from_json(spec.to_json(), parse) == spec
    with pytest.raises(ValueError):
        CocycleSpec.from_json({"xi": [{"monomial": [-1, 0], "value": "v"}]}, parse)


def test_trivial_product():
    E = ExtAlgebra()
    a, m, b, n = mono(2, 1), V, U, mono(1, 3)
    assert ext_mul(ExtElement(a, m), ExtElement(b, n), E) == ExtElement(mul(a, b), mul(a, n) + mul(m, b))


@given(cocycles, elements(3, 3), elements(3, 3))
def test_unit_and_square_zero_kernel(spec, b, n):
    E = ExtAlgebra(spec, check_samples=2)
    x = ExtElement(b, n)
    assert E.mul(E.one(), x) == x == E.mul(x, E.one())
    assert E.mul(ExtElement(zero, b), ExtElement(zero, n)) == E.zero()
    assert spec.omega(ONE, b) == 0 == spec.omega(b, ONE)


@given(cocycles, elements(3, 2), elements(3, 2), elements(3, 2))
def test_twisted_product_is_associative(spec, a, b, c):
    E = ExtAlgebra(spec, check_samples=0)
    x, y, z = ExtElement(a, b), ExtElement(b, c), ExtElement(c, a)
    assert E.mul(E.mul(x, y), z) == E.mul(x, E.mul(y, z))


def test_splitting_example():
    E = ExtAlgebra(XI_V)
    j, rep = split_extension(E)
    assert rep.verdict == "verified"
    assert j.a == ExtElement(U, zero)
    assert j.b_prime == ExtElement(V, -mono(1, 1))
    assert E.mul(j.a, j.b_prime) == E.one()
    assert rep.payload["c"] == "(0, u)"


def test_trivial_splitting_is_the_inclusion():
    E = ExtAlgebra()
    j, rep = split_extension(E, samples=20)
    assert rep.ok and rep.payload["c"] == "(0, 0)"
    assert j(mono(3, 2)) == ExtElement(mono(3, 2), zero)


@given(cocycles, elements(3, 3), elements(3, 3))
def test_splitting_is_multiplicative(spec, x, y):
    E = ExtAlgebra(spec, check_samples=0)
    j, rep = split_extension(E, degree=3, samples=5)
    assert rep.ok
    assert j(mul(x, y)) == E.mul(j(x), j(y))
    assert j(x).a == x


def test_splitting_batch_small():
    rep = check_splitting_batch(cocycles=5, samples=20, seed=4)
    assert rep.ok and rep.payload["nontrivial_c"] >= 1


def test_derivation_to_hom_examples():
    A = BIMODULES["A"]
    phi, rep = derivation_to_hom(A, der_from_pair(A, ONE, zero), samples=50)
    assert rep.ok
    assert phi(U) == (U, ONE) and phi(V) == (V, -mono(2, 0))
    assert phi(mul(U, V)) == (ONE, zero)
    phi, rep = derivation_to_hom(A, lambda a: zero, samples=10)
    assert rep.ok and phi(mono(2, 2)) == (mono(2, 2), zero)
    _, rep = derivation_to_hom(BIMODULES["Omega1"], d_universal, samples=40)
    assert rep.ok


def test_non_derivation_is_caught():
    A = BIMODULES["A"]
    _, rep = derivation_to_hom(A, lambda a: a, samples=20)
    assert rep.verdict == "counterexample"
