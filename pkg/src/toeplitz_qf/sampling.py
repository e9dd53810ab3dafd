"""Seeded random elements for batch checks.

Every sample draws from its own ``random.Random`` seeded with the string
``"{root_seed}:{label}:{index}"``.  A batch therefore gives the same samples
whether it runs serially or split across workers, and across processes
(string seeds are hashed deterministically by :mod:`random`).
"""

from __future__ import annotations

import random

from .basis import LaurentMatrixElement
from .core import ToeplitzElement

COEFF_RANGE = 9


def rng_for(seed: int, label: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{label}:{index}")


def _coeff(rng: random.Random, bound: int) -> int:
    return rng.randint(-bound, bound)


def random_element(
    rng: random.Random, degree: int, max_terms: int = 4, coeff_range: int = COEFF_RANGE
) -> ToeplitzElement:
    """Sum of up to ``max_terms`` monomials ``v^i u^j`` with ``i, j <= degree``."""
    n = rng.randint(1, max_terms)
    return ToeplitzElement(
        [((rng.randint(0, degree), rng.randint(0, degree)), _coeff(rng, coeff_range)) for _ in range(n)]
    )


def random_nonzero_element(rng: random.Random, degree: int, max_terms: int = 4, coeff_range: int = COEFF_RANGE):
    while True:
        a = random_element(rng, degree, max_terms, coeff_range)
        if a:
            return a


def random_laurent_matrix(
    rng: random.Random, degree: int, max_terms: int = 4, coeff_range: int = COEFF_RANGE
) -> LaurentMatrixElement:
    """Laurent exponents in ``[-degree, degree]``, matrix indices in ``[0, degree]``."""
    n_lau = rng.randint(0, max_terms)
    n_mat = rng.randint(0 if n_lau else 1, max_terms)
    lau: dict[int, int] = {}
    for _ in range(n_lau):
        p = rng.randint(-degree, degree)
        lau[p] = lau.get(p, 0) + _coeff(rng, coeff_range)
    mat: dict[tuple[int, int], int] = {}
    for _ in range(n_mat):
        key = (rng.randint(0, degree), rng.randint(0, degree))
        mat[key] = mat.get(key, 0) + _coeff(rng, coeff_range)
    return LaurentMatrixElement(lau, mat)
