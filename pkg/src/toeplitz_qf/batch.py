"""Seeded batch checks for the normal form and the basis change."""

from __future__ import annotations

from .basis import from_laurent_matrix, laurent_monomial, matrix_unit, to_laurent_matrix
from .core import ToeplitzElement, oracle_check_mul
from .reports import COUNTEREXAMPLE, CheckReport, timed_check
from .sampling import random_element, random_laurent_matrix, rng_for


@timed_check
def check_oracle(dim: int = 32, samples: int = 500, degree: int = 8, seed: int = 0) -> CheckReport:
    """Normal-form products against truncated shift-matrix products."""
    report = CheckReport("oracle", {"dim": dim, "samples": samples, "degree": degree, "seed": seed})
    if dim <= 2 * degree:
        raise ValueError(f"dim must exceed 2*degree = {2 * degree}")
    for s in range(samples):
        rng = rng_for(seed, "oracle", s)
        a, b = random_element(rng, degree), random_element(rng, degree)
        res = oracle_check_mul(a, b, dim)
        if not res.passed:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"sample": s, "a": a, "b": b, "mismatch": res.mismatch, "error": res.error}
            return report
    report.payload = {"pairs_checked": samples}
    return report


@timed_check
def check_basis_round_trip(bound: int = 20, samples: int = 200, seed: int = 0) -> CheckReport:
    """Both basis changes are mutually inverse on every basis element with
    indices up to ``bound`` and on random sums."""
    report = CheckReport("check basis-round-trip", {"bound": bound, "samples": samples, "seed": seed})

    def fail(**cex):
        report.verdict = COUNTEREXAMPLE
        report.counterexample = cex
        return report

    for i in range(bound + 1):
        for j in range(bound + 1):
            a = ToeplitzElement.monomial(i, j)
            if from_laurent_matrix(to_laurent_matrix(a)) != a:
                return fail(basis="v^i u^j", index=[i, j])
            x = matrix_unit(i, j)
            if to_laurent_matrix(from_laurent_matrix(x)) != x:
                return fail(basis="e_ij", index=[i, j])
    for p in range(-bound, bound + 1):
        x = laurent_monomial(p)
        if to_laurent_matrix(from_laurent_matrix(x)) != x:
            return fail(basis="z^p", index=p)
    for s in range(samples):
        rng = rng_for(seed, "basis", s)
        a = random_element(rng, bound)
        if from_laurent_matrix(to_laurent_matrix(a)) != a:
            return fail(sample=s, element=a)
        x = random_laurent_matrix(rng, bound)
        if to_laurent_matrix(from_laurent_matrix(x)) != x:
            return fail(sample=s, element=str(x))
    report.payload = {"spot_v2u": str(to_laurent_matrix(ToeplitzElement.monomial(2, 1)))}
    return report
