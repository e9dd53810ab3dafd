from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import elements, term_dicts
from toeplitz_qf.basis import from_laurent_matrix, laurent_monomial, matrix_unit, to_laurent_matrix
from toeplitz_qf.core import ONE, ToeplitzElement, mul
from toeplitz_qf.seminorms import (
    check_hol_equivalence,
    check_norm_additivity,
    check_smooth_equivalence,
    check_submultiplicative,
    e_ij_smooth_closed_form,
    hol_norm,
    norm_primed_hol,
    norm_primed_k,
    norm_qp,
    smooth_norm,
    smooth_weight,
)
from toeplitz_qf.weights import formal, holomorphic, smooth

mono = ToeplitzElement.monomial


def test_norm_examples():
    assert smooth_norm(mono(2, 3), 1) == 12
    assert norm_qp(ONE, smooth_weight(3), smooth_weight(5)) == 1
    q, p = smooth_weight(2), smooth_weight(1)
    assert norm_qp(mono(3, 4), q, p) == q(3) * p(4)
    assert smooth_norm(mono(1, 0) + mono(0, 1, 2), 1) == smooth_norm(mono(1, 0), 1) + 2 * smooth_norm(mono(0, 1), 1)
    assert smooth_norm(ToeplitzElement.zero(), 4) == 0


def test_primed_norm_examples():
    assert norm_primed_k(matrix_unit(1, 1), 1) == 3
    assert norm_primed_k(laurent_monomial(3), 2) == 16
    assert norm_primed_k(laurent_monomial(0) - laurent_monomial(0), 3) == 0
    assert norm_primed_hol(matrix_unit(2, 1), 3) == 27


def test_matrix_unit_norms():
    e11 = from_laurent_matrix(matrix_unit(1, 1))
    assert smooth_norm(e11, 1) == 13
    assert smooth_norm(e11, 1) <= 5 * norm_primed_k(matrix_unit(1, 1), 2)
    for i in range(6):
        for j in range(6):
            for k in range(4):
                assert smooth_norm(from_laurent_matrix(matrix_unit(i, j)), k) == e_ij_smooth_closed_form(i, j, k)
                assert hol_norm(from_laurent_matrix(matrix_unit(i, j)), k) == (1 + k * k) * k ** (i + j)


def test_laurent_monomials_keep_their_norm():
    for p in range(8):
        for k in range(4):
            assert smooth_norm(from_laurent_matrix(laurent_monomial(p)), k) == norm_primed_k(laurent_monomial(p), k)
            assert hol_norm(from_laurent_matrix(laurent_monomial(p)), k) == k**p


@given(term_dicts(8, 5), st.integers(0, 3))
def test_smooth_norm_matches_direct_sum(a, k):
    assert smooth_norm(ToeplitzElement(a), k) == oracles.smooth_norm(a, k)


@given(elements(6, 4))
def test_norm_is_additive_over_terms(a):
    assert check_norm_additivity(a).ok


@given(elements(5, 3), elements(5, 3), st.integers(0, 3))
def test_smooth_norms_are_submultiplicative(a, b, k):
    assert smooth_norm(mul(a, b), k) <= smooth_norm(a, k) * smooth_norm(b, k)


@given(elements(5, 3), st.integers(0, 3))
def test_smooth_equivalence_inequalities(a, k):
    x = to_laurent_matrix(a)
    assert norm_primed_k(x, k) <= smooth_norm(a, k + 1)
    assert smooth_norm(a, k) <= (4**k + 1) * norm_primed_k(x, 2 * k)


def test_submultiplicative_checks():
    rep = check_submultiplicative(smooth(3), degree=4, samples=40, seed=1)
    assert rep.verdict == "verified" and rep.witness["m_weighted"]
    assert check_submultiplicative(holomorphic(index_bound=3), degree=4, samples=40, seed=1).ok
    rep = check_submultiplicative(formal(3), degree=3, samples=10)
    assert rep.verdict == "counterexample" and rep.counterexample["precondition"] == "monotone"


def test_equivalence_checks_small():
    assert check_smooth_equivalence(2, degree=6, samples=100, seed=3, grid=8).verdict == "verified"
    rep = check_hol_equivalence(2, degree=4, samples=50, seed=3)
    assert rep.ok
