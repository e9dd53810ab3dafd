"""Linear bijection between the ``v^i u^j`` basis and Laurent polynomials
plus finite matrices.

The Laurent/matrix side has basis ``z^p`` (``p`` any integer) and matrix
units ``e_{i,j}``.  The map into the algebra sends ``z^k`` to ``v^k``,
``z^-k`` to ``u^k`` and ``e_{i,j}`` to ``v^i (1 - vu) u^j``.  Only the linear
structure is transported; products are always taken in the ``v, u`` basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .core import E, ToeplitzElement, format_terms

__all__ = [
    "LaurentMatrixElement",
    "from_laurent_matrix",
    "to_laurent_matrix",
    "matrix_unit",
    "laurent_monomial",
]


class LaurentMatrixElement:
    """Pair of sparse maps: ``laurent[p]`` is the coefficient of ``z^p`` and
    ``matrix[(i, j)]`` the coefficient of ``e_{i,j}``."""

    __slots__ = ("laurent", "matrix")

    def __init__(self, laurent: Mapping[int, object] = (), matrix: Mapping[tuple, object] = ()):
        lau: dict[int, Fraction] = {}
        for p, c in dict(laurent).items():
            c = Fraction(c)
            if c:
                lau[int(p)] = lau.get(int(p), 0) + c
        mat: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in dict(matrix).items():
            if i < 0 or j < 0:
                raise ValueError(f"matrix unit index must be nonnegative: {(i, j)}")
            c = Fraction(c)
            if c:
                mat[(i, j)] = mat.get((i, j), 0) + c
        self.laurent = {p: c for p, c in lau.items() if c}
        self.matrix = {k: c for k, c in mat.items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrixElement):
            return NotImplemented
        return self.laurent == other.laurent and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((frozenset(self.laurent.items()), frozenset(self.matrix.items())))

    def __add__(self, other: "LaurentMatrixElement") -> "LaurentMatrixElement":
        lau = dict(self.laurent)
        for p, c in other.laurent.items():
            lau[p] = lau.get(p, 0) + c
        mat = dict(self.matrix)
        for k, c in other.matrix.items():
            mat[k] = mat.get(k, 0) + c
        return LaurentMatrixElement(lau, mat)

    def __neg__(self) -> "LaurentMatrixElement":
        return LaurentMatrixElement(
            {p: -c for p, c in self.laurent.items()}, {k: -c for k, c in self.matrix.items()}
        )

    def __sub__(self, other: "LaurentMatrixElement") -> "LaurentMatrixElement":
        return self + (-other)

    def __rmul__(self, c) -> "LaurentMatrixElement":
        return LaurentMatrixElement(
            {p: c * x for p, x in self.laurent.items()}, {k: c * x for k, x in self.matrix.items()}
        )

    def is_zero(self) -> bool:
        return not self.laurent and not self.matrix

    def __str__(self) -> str:
        terms = [(_z_label(p), c) for p, c in sorted(self.laurent.items())]
        terms += [(f"e_{{{i},{j}}}", c) for (i, j), c in sorted(self.matrix.items())]
        return format_terms(terms)

    def __repr__(self) -> str:
        return f"LaurentMatrixElement({str(self)!r})"


def _z_label(p: int) -> str:
    return "1" if p == 0 else f"z^{p}"


def laurent_monomial(p: int, c=1) -> LaurentMatrixElement:
    return LaurentMatrixElement({p: c})


def matrix_unit(i: int, j: int, c=1) -> LaurentMatrixElement:
    return LaurentMatrixElement({}, {(i, j): c})


def _image_of_matrix_unit(i: int, j: int) -> ToeplitzElement:
    return ToeplitzElement.monomial(i, 0) * E * ToeplitzElement.monomial(0, j)


def from_laurent_matrix(x: LaurentMatrixElement) -> ToeplitzElement:
    acc = ToeplitzElement.zero()
    for p, c in x.laurent.items():
        mono = ToeplitzElement.monomial(p, 0) if p >= 0 else ToeplitzElement.monomial(0, -p)
        acc = acc + mono.scaled(c)
    for (i, j), c in x.matrix.items():
        acc = acc + _image_of_matrix_unit(i, j).scaled(c)
    return acc


def to_laurent_matrix(a: ToeplitzElement) -> LaurentMatrixElement:
    """Expand each ``v^i u^j`` as ``z^(i-j)`` minus a diagonal run of
    ``min(i, j)`` matrix units ending at ``e_{i-1,j-1}``."""
    lau: dict[int, Fraction] = {}
    mat: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in a.items():
        lau[i - j] = lau.get(i - j, 0) + c
        m = min(i, j)
        for t in range(m):
            key = (i - m + t, j - m + t)
            mat[key] = mat.get(key, 0) - c
    return LaurentMatrixElement(lau, mat)
