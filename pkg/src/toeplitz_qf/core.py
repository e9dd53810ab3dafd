"""Exact arithmetic in the algebraic Toeplitz algebra.

The algebra is generated by ``u`` and ``v`` subject to ``u*v = 1``.  Every
element is a finite linear combination of the basis monomials ``v^i u^j``
with exact rational coefficients.  Products of basis monomials follow

    (v^i u^j)(v^k u^l) = v^i u^(j-k+l)   if j >= k
                       = v^(i+k-j) u^l   if j <= k
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

__all__ = [
    "Monomial",
    "SparseVector",
    "ToeplitzElement",
    "TruncatedMatrix",
    "ONE",
    "U",
    "V",
    "E",
    "E_PRIME",
    "monomial_product",
    "mul",
    "add",
    "scale",
    "neg",
    "involution",
    "to_matrix",
    "oracle_check_mul",
    "OracleResult",
    "format_rational",
]


class Monomial(NamedTuple):
    """The basis element ``v^i u^j``; ``(0, 0)`` is the identity."""

    i: int
    j: int

    def __str__(self) -> str:
        parts = []
        if self.i:
            parts.append("v" if self.i == 1 else f"v^{self.i}")
        if self.j:
            parts.append("u" if self.j == 1 else f"u^{self.j}")
        return "*".join(parts) if parts else "1"


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    i, j = a
    k, l = b
    if j >= k:
        return Monomial(i, j - k + l)
    return Monomial(i + k - j, l)


def format_rational(c: Rational) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class SparseVector:
    """Immutable finite linear combination over a hashable, sortable basis.

    Zero coefficients are never stored, so equality of two vectors is
    equality of their coefficient maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, c in items:
            c = _as_fraction(c)
            if c:
                key = self._coerce_key(key)
                acc[key] = acc.get(key, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _coerce_key(cls, key):
        return key

    @classmethod
    def _from_clean(cls, terms: dict):
        # terms already canonical: keys coerced, no zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(sorted(self._terms.items()))

    def support(self) -> list:
        return sorted(self._terms)

    def coeff(self, key) -> Fraction:
        return self._terms.get(self._coerce_key(key), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            s = acc.get(k, 0) + c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return self._from_clean(acc)

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scaled(self, c) -> "SparseVector":
        c = _as_fraction(c)
        if not c:
            return self._from_clean({})
        return self._from_clean({k: c * x for k, x in self._terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented


class ToeplitzElement(SparseVector):
    """Finite sum ``sum c_ij v^i u^j`` in canonical (zero-free) form."""

    __slots__ = ()

    @classmethod
    def _coerce_key(cls, key):
        key = Monomial(*key)
        if key.i < 0 or key.j < 0:
            raise ValueError(f"negative exponent in monomial {tuple(key)}")
        return key

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "ToeplitzElement":
        return cls({(i, j): c})

    @classmethod
    def scalar(cls, c) -> "ToeplitzElement":
        return cls({(0, 0): c})

    @classmethod
    def zero(cls) -> "ToeplitzElement":
        return cls._from_clean({})

    def maxdeg(self) -> int:
        """Largest exponent of ``v`` or ``u`` occurring in the support."""
        return max((max(m) for m in self._terms), default=0)

    def __mul__(self, other):
        if isinstance(other, ToeplitzElement):
            return mul(self, other)
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, n: int) -> "ToeplitzElement":
        if n < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        return format_terms((str(m), c) for m, c in self.items())

    def __repr__(self) -> str:
        return f"ToeplitzElement({str(self)!r})"


def format_terms(terms: Iterable[tuple[str, Fraction]]) -> str:
    """Join ``(basis label, coefficient)`` pairs as ``c*label`` with signs."""
    out = []
    for label, c in terms:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if label == "1":
            body = format_rational(a)
        elif a == 1:
            body = label
        else:
            body = f"{format_rational(a)}*{label}"
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def mul(a: ToeplitzElement, b: ToeplitzElement) -> ToeplitzElement:
    acc: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            m = monomial_product(ma, mb)
            acc[m] = acc.get(m, 0) + ca * cb
    return ToeplitzElement._from_clean({m: c for m, c in acc.items() if c})


def add(a: ToeplitzElement, b: ToeplitzElement) -> ToeplitzElement:
    return a + b


def scale(c, a: ToeplitzElement) -> ToeplitzElement:
    return a.scaled(c)


def neg(a: ToeplitzElement) -> ToeplitzElement:
    return -a


def involution(a: ToeplitzElement) -> ToeplitzElement:
    """Swap ``v^i u^j`` to ``v^j u^i``; rational coefficients are self-conjugate."""
    return ToeplitzElement._from_clean(
        {Monomial(m.j, m.i): c for m, c in a._terms.items()}
    )


ONE = ToeplitzElement.monomial(0, 0)
U = ToeplitzElement.monomial(0, 1)
V = ToeplitzElement.monomial(1, 0)
E_PRIME = ToeplitzElement.monomial(1, 1)
E = ONE - E_PRIME


class TruncatedMatrix:
    """Dense ``N x N`` rational matrix stored as a common denominator over
    an integer array (exact)."""

    __slots__ = ("dim", "_num", "_den")

    def __init__(self, num: np.ndarray, den: int = 1):
        num = np.asarray(num, dtype=object)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise ValueError("truncated matrices are square")
        self.dim = num.shape[0]
        self._num = num
        self._den = int(den)

    @classmethod
    def identity(cls, n: int) -> "TruncatedMatrix":
        return cls(_int_identity(n))

    def entry(self, r: int, c: int) -> Fraction:
        return Fraction(int(self._num[r, c]), self._den)

    @property
    def entries(self) -> list[list[Fraction]]:
        return [[self.entry(r, c) for c in range(self.dim)] for r in range(self.dim)]

    def __matmul__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return TruncatedMatrix(_exact_matmul(self._num, other._num), self._den * other._den)

    def block(self, n: int) -> "TruncatedMatrix":
        return TruncatedMatrix(self._num[:n, :n], self._den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedMatrix) or other.dim != self.dim:
            return NotImplemented
        return bool(np.all(self._num * other._den == other._num * self._den))

    def first_mismatch(self, other: "TruncatedMatrix", n: int | None = None):
        n = self.dim if n is None else n
        lhs = self._num[:n, :n] * other._den
        rhs = other._num[:n, :n] * self._den
        bad = np.argwhere(lhs != rhs)
        if len(bad) == 0:
            return None
        r, c = (int(x) for x in bad[0])
        return r, c, self.entry(r, c), other.entry(r, c)

    def __repr__(self) -> str:
        return f"TruncatedMatrix(dim={self.dim})"


def _int_identity(n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for k in range(n):
        m[k, k] = 1
    return m


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    bound = max((abs(int(x)) for x in a.flat), default=0) * max(
        (abs(int(x)) for x in b.flat), default=0
    ) * n
    if bound < 2**62:
        prod = a.astype(np.int64) @ b.astype(np.int64)
        return prod.astype(object)
    return a.dot(b)


def _shift_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    # v: delta_k -> delta_{k+1} (delta_{n-1} falls off); u: delta_k -> delta_{k-1}, delta_0 -> 0
    s = np.zeros((n, n), dtype=np.int64)
    b = np.zeros((n, n), dtype=np.int64)
    for k in range(n - 1):
        s[k + 1, k] = 1
        b[k, k + 1] = 1
    return s, b


def to_matrix(a: ToeplitzElement, n: int) -> TruncatedMatrix:
    """Compress ``a`` to ``span{delta_0, ..., delta_{n-1}}`` by composing the
    truncated shift matrices."""
    if n < 1:
        raise ValueError("matrix dimension must be positive")
    s, b = _shift_matrices(n)
    den = 1
    for c in a._terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    acc = np.zeros((n, n), dtype=object)
    for m, c in a._terms.items():
        mat = np.linalg.matrix_power(s, m.i) @ np.linalg.matrix_power(b, m.j)
        acc = acc + mat.astype(object) * int(c * den)
    return TruncatedMatrix(acc, den)


class OracleResult(NamedTuple):
    passed: bool
    block: int
    mismatch: tuple | None
    error: str | None = None


def oracle_check_mul(a: ToeplitzElement, b: ToeplitzElement, n: int) -> OracleResult:
    """Compare the normal-form product with the product of truncated shift
    matrices on the leading ``(n - d) x (n - d)`` block, ``d = maxdeg(a) + maxdeg(b)``.

    Columns below ``n - d`` are untouched by truncation: ``b`` moves
    ``delta_c`` at most ``maxdeg(b)`` steps up, so it stays inside the window.
    """
    d = a.maxdeg() + b.maxdeg()
    if n <= d:
        return OracleResult(False, 0, None, f"dimension {n} must exceed maxdeg(a)+maxdeg(b)={d}")
    block = n - d
    lhs = to_matrix(mul(a, b), n)
    rhs = to_matrix(a, n) @ to_matrix(b, n)
    mismatch = lhs.first_mismatch(rhs, block)
    return OracleResult(mismatch is None, block, mismatch)
