"""Weighted seminorms on the Toeplitz algebra and the inequalities between them.

``norm_qp`` is the weighted l1 norm in the ``v^i u^j`` basis.  The primed
norms live on Laurent/matrix coordinates and are always evaluated on the
same element through :mod:`toeplitz_qf.basis`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .basis import LaurentMatrixElement, from_laurent_matrix, laurent_monomial, matrix_unit, to_laurent_matrix
from .core import ToeplitzElement, mul
from .reports import COUNTEREXAMPLE, NO_WITNESS, CheckReport, timed_check
from .sampling import random_element, random_laurent_matrix, rng_for
from .weights import (
    WeightFamily,
    WeightSeq,
    check_m_weighted,
    check_monotone,
    max_ratio,
    search_upper_bound,
    search_weighted_witness,
)

__all__ = [
    "norm_qp",
    "smooth_norm",
    "hol_norm",
    "norm_primed",
    "norm_primed_k",
    "norm_primed_hol",
    "check_submultiplicative",
    "check_norm_additivity",
    "check_smooth_equivalence",
    "check_hol_equivalence",
]


def norm_qp(a: ToeplitzElement, q: WeightSeq, p: WeightSeq) -> Fraction:
    """``sum |c_ij| q_i p_j``."""
    return Fraction(sum(abs(c) * q(i) * p(j) for (i, j), c in a.items()))


def smooth_weight(k: int) -> WeightSeq:
    return WeightSeq(lambda n: (1 + n) ** k, f"(1+n)^{k}")


def hol_weight(k: int) -> WeightSeq:
    return WeightSeq(lambda n: k**n, f"{k}^n")


def smooth_norm(a: ToeplitzElement, k: int) -> Fraction:
    w = smooth_weight(k)
    return norm_qp(a, w, w)


def hol_norm(a: ToeplitzElement, k: int) -> Fraction:
    w = hol_weight(k)
    return norm_qp(a, w, w)


def norm_primed(
    x: LaurentMatrixElement,
    matrix_weight: Callable[[int, int], object],
    laurent_weight: Callable[[int], object],
) -> Fraction:
    total = sum(abs(c) * matrix_weight(i, j) for (i, j), c in x.matrix.items())
    total += sum(abs(c) * laurent_weight(p) for p, c in x.laurent.items())
    return Fraction(total)


def norm_primed_k(x: LaurentMatrixElement, k: int) -> Fraction:
    """``sum |a_ij| (1+i+j)^k + sum |b_p| (1+|p|)^k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return norm_primed(x, lambda i, j: (1 + i + j) ** k, lambda p: (1 + abs(p)) ** k)


def norm_primed_hol(x: LaurentMatrixElement, k: int) -> Fraction:
    """Holomorphic analogue: matrix units weighted ``k^(i+j)``, ``z^p`` by ``k^|p|``."""
    return norm_primed(x, lambda i, j: k ** (i + j), lambda p: k ** abs(p))


# -- submultiplicativity -----------------------------------------------------

def _dominating_witness(seq: WeightSeq, family: WeightFamily, horizon: int):
    """Weighted witness ``(C, seq')`` post-selected so that ``seq <= seq'``."""
    best = search_weighted_witness(seq, family, horizon)
    if best is None:
        return None
    C, idx, _ = best
    prime = family.generator(idx)
    if any(seq(n) > prime(n) for n in range(horizon + 1)):
        r = search_upper_bound([seq, prime], family, horizon)
        if r is None:
            return None
        idx, prime = r, family.generator(r)
    return C, idx, prime


@timed_check
def check_submultiplicative(
    P: WeightFamily,
    Q: WeightFamily | None = None,
    degree: int = 4,
    samples: int = 100,
    seed: int = 0,
    grid: int = 6,
) -> CheckReport:
    """``||ab||_{q,p} <= C ||a||_{q',p'} ||b||_{q',p'}`` on random pairs and on
    every monomial pair in the ``grid``, per generator pair up to
    ``index_bound``.  For m-weighted families the witness must be
    ``q' = q, p' = p, C = 1``."""
    Q = P if Q is None else Q
    horizon = max(2 * degree, 2 * grid)
    params = {
        "P": P.name, "Q": Q.name, "degree": degree, "samples": samples, "seed": seed,
        "grid": grid, "horizon": horizon, "index_bound": P.index_bound,
    }
    report = CheckReport("check submultiplicative", params)
    for fam in {id(P): P, id(Q): Q}.values():
        mono = check_monotone(fam, horizon)
        if not mono.ok:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"precondition": "monotone", "family": fam.name, **mono.counterexample}
            return report
    m_weighted = check_m_weighted(P, horizon).ok and check_m_weighted(Q, horizon).ok

    pairs = [random_pair(seed, s, degree) for s in range(samples)]
    witnesses = []
    for kq, q in Q.generators():
        for kp, p in P.generators():
            wq = _dominating_witness(q, Q, horizon)
            wp = _dominating_witness(p, P, horizon)
            if wq is None or wp is None:
                report.verdict = NO_WITNESS
                report.counterexample = {"generator_pair": [kq, kp]}
                return report
            C = max(wq[0], wp[0])
            qq, pp = wq[2], wp[2]
            if m_weighted and (C != 1 or wq[1] != kq or wp[1] != kp):
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {
                    "generator_pair": [kq, kp], "expected": "q'=q, p'=p, C=1",
                    "q_prime": wq[1], "p_prime": wp[1], "C": C,
                }
                return report
            witnesses.append({"q": kq, "p": kp, "q_prime": wq[1], "p_prime": wp[1], "C": C})
            bad = _branch_grid(q, p, qq, pp, C, grid)
            if bad is not None:
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"generator_pair": [kq, kp], **bad}
                return report
            for idx, (a, b) in enumerate(pairs):
                lhs = norm_qp(mul(a, b), q, p)
                rhs = C * norm_qp(a, qq, pp) * norm_qp(b, qq, pp)
                if lhs > rhs:
                    report.verdict = COUNTEREXAMPLE
                    report.counterexample = {
                        "generator_pair": [kq, kp], "sample": idx, "a": a, "b": b, "lhs": lhs, "rhs": rhs,
                    }
                    return report
                if m_weighted and lhs > norm_qp(a, q, p) * norm_qp(b, q, p):
                    report.verdict = COUNTEREXAMPLE
                    report.counterexample = {"generator_pair": [kq, kp], "sample": idx, "a": a, "b": b}
                    return report
    report.witness = {"per_generator_pair": witnesses, "m_weighted": m_weighted}
    return report


def random_pair(seed: int, index: int, degree: int):
    rng = rng_for(seed, "pair", index)
    return random_element(rng, degree), random_element(rng, degree)


def _branch_grid(q, p, qq, pp, C, grid: int):
    """Both monotone chains of the monomial product estimate on ``[0, grid]^4``."""
    for i in range(grid + 1):
        for j in range(grid + 1):
            for k in range(grid + 1):
                for l in range(grid + 1):
                    bound = C * qq(i) * qq(k) * pp(j) * pp(l)
                    if j >= k:
                        first, mid = q(i) * p(j - k + l), q(i) * p(j + l)
                    else:
                        first, mid = q(i + k - j) * p(l), q(i + k) * p(l)
                    if not first <= mid <= bound:
                        return {"i": i, "j": j, "k": k, "l": l, "value": first, "monotone_step": mid, "bound": bound}
    return None


@timed_check
def check_norm_additivity(a: ToeplitzElement, q: WeightSeq | None = None, p: WeightSeq | None = None) -> CheckReport:
    """The norm of a sum of distinct monomials is the sum of their norms."""
    q = smooth_weight(1) if q is None else q
    p = q if p is None else p
    whole = norm_qp(a, q, p)
    parts = sum(
        (norm_qp(ToeplitzElement.monomial(i, j, c), q, p) for (i, j), c in a.items()),
        Fraction(0),
    )
    report = CheckReport("check norm-additivity", {"element": str(a), "q": q.name, "p": p.name})
    report.payload = {"norm": whole, "sum_of_terms": parts}
    if whole != parts:
        report.verdict = COUNTEREXAMPLE
        report.counterexample = {"norm": whole, "sum_of_terms": parts}
    return report


# -- norm equivalences ---------------------------------------------------------

def e_ij_smooth_closed_form(i: int, j: int, k: int) -> int:
    return (1 + i) ** k * (1 + j) ** k + (2 + i) ** k * (2 + j) ** k


@timed_check
def check_smooth_equivalence(
    kmax: int, degree: int = 10, samples: int = 1000, seed: int = 0, grid: int = 20
) -> CheckReport:
    """Random elements on both sides of the basis change:
    ``||a||'_k <= ||a||_{k+1}`` and ``||x||_k <= (4^k + 1) ||x||'_{2k}``; plus the
    monomial lemma and the closed form of ``||e_{i,j}||_k`` on ``[0, grid]^2``."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    params = {"kmax": kmax, "degree": degree, "samples": samples, "seed": seed, "grid": grid}
    report = CheckReport("check smooth-equivalence", params)

    def fail(**cex):
        report.verdict = COUNTEREXAMPLE
        report.counterexample = cex
        return report

    for k in range(kmax + 1):
        for i in range(grid + 1):
            for j in range(grid + 1):
                mono = ToeplitzElement.monomial(i, j)
                lhs = norm_primed_k(to_laurent_matrix(mono), k)
                rhs = smooth_norm(mono, k + 1)
                if lhs > rhs:
                    return fail(lemma="monomial", k=k, i=i, j=j, lhs=lhs, rhs=rhs)
                e_norm = smooth_norm(from_laurent_matrix(matrix_unit(i, j)), k)
                if e_norm != e_ij_smooth_closed_form(i, j, k):
                    return fail(lemma="e_ij", k=k, i=i, j=j, value=e_norm)
    ratio_fwd = ratio_bwd = Fraction(0)
    for s in range(samples):
        rng = rng_for(seed, "smooth-equivalence", s)
        a = random_element(rng, degree)
        x = random_laurent_matrix(rng, degree)
        a_lm = to_laurent_matrix(a)
        x_alg = from_laurent_matrix(x)
        for k in range(kmax + 1):
            lhs, rhs = norm_primed_k(a_lm, k), smooth_norm(a, k + 1)
            if lhs > rhs:
                return fail(inequality="primed_k <= k+1", k=k, sample=s, element=a, lhs=lhs, rhs=rhs)
            if rhs:
                ratio_fwd = max(ratio_fwd, lhs / rhs)
            lhs2, rhs2 = smooth_norm(x_alg, k), (4**k + 1) * norm_primed_k(x, 2 * k)
            if lhs2 > rhs2:
                return fail(inequality="k <= (4^k+1) primed_2k", k=k, sample=s, element=str(x), lhs=lhs2, rhs=rhs2)
            if rhs2:
                ratio_bwd = max(ratio_bwd, lhs2 / rhs2)
    report.payload = {"max_ratio_primed_over_k+1": ratio_fwd, "max_ratio_k_over_bound": ratio_bwd}
    return report


def _search_constant(pairs_for: Callable[[int], object], candidates: range):
    best = None
    for kk in candidates:
        res = max_ratio(pairs_for(kk), cap=best[0] if best else None)
        if res is None:
            continue
        if best is None or res[0] < best[0]:
            best = (res[0], kk, res[1])
    return best


@timed_check
def check_hol_equivalence(
    kmax: int, degree: int = 6, samples: int = 200, seed: int = 0, horizon: int = 30, search: int = 4
) -> CheckReport:
    """Search ``k' in [k, k+search]`` and the least ``C`` with
    ``||v^i u^j||'_k <= C ||v^i u^j||_{k'}`` for ``i, j <= horizon``, and the
    reverse constant on matrix units and Laurent monomials.  The constants
    are then confirmed on random elements."""
    params = {"kmax": kmax, "degree": degree, "samples": samples, "seed": seed, "horizon": horizon, "search": search}
    report = CheckReport("check hol-equivalence", params)
    found = []
    grid = [(i, j) for i in range(horizon + 1) for j in range(horizon + 1)]
    for k in range(1, kmax + 1):
        primed_mono = {(i, j): norm_primed_hol(to_laurent_matrix(ToeplitzElement.monomial(i, j)), k) for i, j in grid}
        fwd = _search_constant(
            lambda kk: ((primed_mono[(i, j)], hol_norm(ToeplitzElement.monomial(i, j), kk), (i, j)) for i, j in grid),
            range(k, k + search + 1),
        )
        units = [matrix_unit(i, j) for i, j in grid]
        units += [laurent_monomial(p) for p in range(-horizon, horizon + 1)]
        plain = [hol_norm(from_laurent_matrix(x), k) for x in units]
        bwd = _search_constant(
            lambda kk: ((plain[t], norm_primed_hol(x, kk), t) for t, x in enumerate(units)),
            range(k, k + search + 1),
        )
        if fwd is None or bwd is None:
            report.verdict = NO_WITNESS
            report.counterexample = {"k": k, "direction": "forward" if fwd is None else "reverse"}
            return report
        found.append({"k": k, "k_prime": fwd[1], "C": fwd[0], "k_double_prime": bwd[1], "C_prime": bwd[0]})
    for s in range(samples):
        rng = rng_for(seed, "hol-equivalence", s)
        a = random_element(rng, degree)
        x = random_laurent_matrix(rng, degree)
        a_lm, x_alg = to_laurent_matrix(a), from_laurent_matrix(x)
        for w in found:
            k = w["k"]
            if norm_primed_hol(a_lm, k) > w["C"] * hol_norm(a, w["k_prime"]):
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"k": k, "sample": s, "element": a, "direction": "forward"}
                return report
            if hol_norm(x_alg, k) > w["C_prime"] * norm_primed_hol(x, w["k_double_prime"]):
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"k": k, "sample": s, "element": str(x), "direction": "reverse"}
                return report
    report.witness = {"per_k": found}
    return report
