import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from toeplitz_qf.core import ONE, U, V, ToeplitzElement, mul
from toeplitz_qf.omega1 import (
    BIMODULES,
    LeftIdealTensorElement,
    Omega1Element,
    TensorElement,
    check_continuity_bound,
    check_diagram_D,
    check_leibniz_batch,
    check_omega1_suite,
    continuity_witness,
    d_universal,
    der_from_pair,
    embed_into_tensor_square,
    ideal_to_tensor,
    leibniz_check,
    multiplication_map,
    omega1_norm,
    pair_from_der,
    project_to_ideal,
    random_omega1,
    universal_pair_relation_check,
)
from toeplitz_qf.seminorms import smooth_weight
from toeplitz_qf.weights import holomorphic, smooth

mono = ToeplitzElement.monomial
pure = TensorElement.pure


def ideal(i, y=ONE, c=1):
    (m,) = y.support()
    return LeftIdealTensorElement({(i, tuple(m)): c})


def form(tensor=None, ideal_part=None):
    return Omega1Element(tensor or TensorElement.zero(), ideal_part or LeftIdealTensorElement.zero())


forms = st.integers(0, 10**6).map(lambda s: random_omega1(random.Random(s), 4))


def test_left_action_on_ideal_part():
    assert U * form(ideal_part=ideal(0)) == 0
    assert V * form(ideal_part=ideal(0)) == form(ideal_part=ideal(1))
    assert mono(1, 1) * form(ideal_part=ideal(2, U)) == form(ideal_part=ideal(2, U))


def test_universal_derivation_examples():
    assert d_universal(U) == form(pure(ONE, ONE))
    assert d_universal(V) == form(-pure(V, V), ideal(0))
    assert d_universal(ONE) == 0
    v2 = mono(2, 0)
    assert d_universal(v2) == form(-pure(V, v2) - pure(v2, V), ideal(0, V) + ideal(1))
    assert d_universal(v2) == d_universal(V) * V + V * d_universal(V)
    assert d_universal(mul(V, U)) == form(pure(V, ONE) - pure(V, mono(1, 1)), ideal(0, U))


def test_pair_relation():
    assert U * d_universal(V) == form(-pure(ONE, V))
    assert d_universal(U) * V == form(pure(ONE, V))
    assert universal_pair_relation_check().ok


def test_printing():
    assert str(d_universal(V)) == "(-1 * v (x) v ; 1 * e (x) 1)"


def test_derivations_from_pairs():
    A = BIMODULES["A"]
    d = der_from_pair(A, ONE, ToeplitzElement.zero())
    assert (d.du, d.dv) == (ONE, -mono(2, 0))
    assert not d.relation()
    zero = der_from_pair(A, ToeplitzElement.zero(), ToeplitzElement.zero())
    assert zero(mono(3, 2)) == 0
    with pytest.raises(ValueError):
        der_from_pair(A, ONE, V)


def test_universal_pair():
    omega = BIMODULES["Omega1"]
    m, ell = pair_from_der(omega, d_universal)
    assert m == form(pure(ONE, ONE))
    assert ell == form(ideal_part=ideal(0))
    rebuilt = der_from_pair(omega, m, ell)
    for a in (U, V, mono(2, 3), mono(4, 1)):
        assert rebuilt(a) == d_universal(a)


def test_embedding_examples():
    assert embed_into_tensor_square(d_universal(V)) == pure(ONE, V) - pure(V, ONE)
    assert embed_into_tensor_square(d_universal(ONE)) == 0


def test_norm_examples():
    w = smooth_weight(1)
    assert omega1_norm(form(pure(ONE, ONE)), w, w) == 1
    assert omega1_norm(form(ideal_part=ideal(0)), w, w) == 5
    assert omega1_norm(d_universal(V), w, w) == 9


@given(elements(4, 3), elements(4, 3))
def test_leibniz(a, b):
    assert leibniz_check(a, b).ok


@given(elements(4, 3))
def test_embedding_of_exact_forms(a):
    t = embed_into_tensor_square(d_universal(a))
    expected = TensorElement.zero()
    for (i, j), c in a.items():
        x = mono(i, j)
        expected = expected + (pure(ONE, x) - pure(x, ONE)).scaled(c)
    assert t == expected


@given(forms, elements(3, 2))
def test_embedding_is_a_bimodule_map(w, a):
    assert multiplication_map(embed_into_tensor_square(w)) == 0
    assert embed_into_tensor_square(a * w) == a * embed_into_tensor_square(w)
    assert embed_into_tensor_square(w * a) == embed_into_tensor_square(w) * a


@given(forms, elements(3, 2), elements(3, 2))
def test_bimodule_axioms(w, a, b):
    assert (a * w) * b == a * (w * b)
    assert mul(a, b) * w == a * (b * w)
    assert w * mul(a, b) == (w * a) * b
    assert ONE * w == w == w * ONE


@given(forms)
def test_ideal_part_survives_projection(w):
    assert project_to_ideal(ideal_to_tensor(w.ideal_part)) == w.ideal_part


def test_continuity_witness_values():
    for k in (1, 2, 3):
        assert continuity_witness(smooth(), k).C2 == 2 ** (2 * k + 1) + 2**k + 1
        assert continuity_witness(holomorphic(), k).C2 == 3 * k + 1


def test_continuity_checks_small():
    rep = check_continuity_bound(smooth(), 1, degree=5, samples=60, seed=2, grid=10)
    assert rep.verdict == "verified" and rep.witness["C2"] == 11
    rep = check_diagram_D(holomorphic(), 2, degree=5, samples=60, seed=2)
    assert rep.ok and rep.max_ratio <= 2 * 7


def test_batches_small():
    assert check_leibniz_batch(50, 4, 5).ok
    assert check_omega1_suite(5, leibniz_samples=30, pair_samples=10, embed_samples=30, degree=4).ok
