"""Noncommutative 1-forms over the Toeplitz algebra.

With ``e = 1 - vu`` the bimodule of 1-forms is ``(A (x) A) + (Ae (x) A)``.
Since ``ue = 0`` the left ideal ``Ae`` has basis ``{v^i e}``, so the second
summand is stored as a sparse map ``(i, v^k u^l) -> c`` meaning
``c * v^i e (x) v^k u^l``.  The universal derivation sends ``u`` to
``(1 (x) 1, 0)`` and ``v`` to ``(-v (x) v, e (x) 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable

from .core import E, ONE, U, V, Monomial, SparseVector, ToeplitzElement, format_rational, mul
from .reports import COUNTEREXAMPLE, NO_WITNESS, CheckReport, timed_check
from .sampling import random_element, rng_for
from .weights import (
    WeightFamily,
    WeightSeq,
    convolve,
    search_dominating,
    search_upper_bound,
    search_weighted_witness,
)

__all__ = [
    "TensorElement",
    "LeftIdealTensorElement",
    "Omega1Element",
    "BimoduleInstance",
    "BIMODULES",
    "Derivation",
    "left_act",
    "right_act",
    "d_universal",
    "leibniz_check",
    "universal_pair_relation_check",
    "der_from_pair",
    "pair_from_der",
    "embed_into_tensor_square",
    "multiplication_map",
    "ideal_to_tensor",
    "project_to_ideal",
    "tensor_norm",
    "omega1_norm",
    "ContinuityWitness",
    "continuity_witness",
    "check_continuity_bound",
    "check_diagram_D",
    "check_omega1_suite",
]


def _elementary(c: Fraction, left: str, right: str) -> str:
    return f"{format_rational(c)} * {left} (x) {right}"


def _v_e_label(i: int) -> str:
    if i == 0:
        return "e"
    return ("v" if i == 1 else f"v^{i}") + "*e"


class TensorElement(SparseVector):
    """``sum c (v^i u^j (x) v^k u^l)`` in ``A (x) A``."""

    __slots__ = ()

    @classmethod
    def _coerce_key(cls, key):
        x, y = key
        return (Monomial(*x), Monomial(*y))

    @classmethod
    def zero(cls) -> "TensorElement":
        return cls._from_clean({})

    @classmethod
    def pure(cls, x: ToeplitzElement, y: ToeplitzElement) -> "TensorElement":
        """``x (x) y`` expanded bilinearly."""
        acc: dict = {}
        for mx, cx in x._terms.items():
            for my, cy in y._terms.items():
                acc[(mx, my)] = cx * cy
        return cls._from_clean(acc)

    def left_mul(self, a: ToeplitzElement) -> "TensorElement":
        acc: dict = {}
        for (x, y), c in self._terms.items():
            for m, ca in a._terms.items():
                key = (_mono_mul(m, x), y)
                acc[key] = acc.get(key, 0) + ca * c
        return TensorElement._from_clean({k: c for k, c in acc.items() if c})

    def right_mul(self, a: ToeplitzElement) -> "TensorElement":
        acc: dict = {}
        for (x, y), c in self._terms.items():
            for m, ca in a._terms.items():
                key = (x, _mono_mul(y, m))
                acc[key] = acc.get(key, 0) + c * ca
        return TensorElement._from_clean({k: c for k, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, ToeplitzElement):
            return self.left_mul(other)
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ToeplitzElement):
            return self.right_mul(other)
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_elementary(c, str(x), str(y)) for (x, y), c in self.items())

    def __repr__(self) -> str:
        return f"TensorElement({str(self)!r})"


class LeftIdealTensorElement(SparseVector):
    """``sum c (v^i e (x) v^k u^l)`` in ``Ae (x) A``."""

    __slots__ = ()

    @classmethod
    def _coerce_key(cls, key):
        i, y = key
        if i < 0:
            raise ValueError("power of v must be nonnegative")
        return (int(i), Monomial(*y))

    @classmethod
    def zero(cls) -> "LeftIdealTensorElement":
        return cls._from_clean({})

    def left_mul(self, a: ToeplitzElement) -> "LeftIdealTensorElement":
        # (v^p u^q) v^i e = v^(p+i-q) e if q <= i, else 0 (because u e = 0)
        acc: dict = {}
        for (i, y), c in self._terms.items():
            for (p, q), ca in a._terms.items():
                if q <= i:
                    key = (p + i - q, y)
                    acc[key] = acc.get(key, 0) + ca * c
        return LeftIdealTensorElement._from_clean({k: c for k, c in acc.items() if c})

    def right_mul(self, a: ToeplitzElement) -> "LeftIdealTensorElement":
        acc: dict = {}
        for (i, y), c in self._terms.items():
            for m, ca in a._terms.items():
                key = (i, _mono_mul(y, m))
                acc[key] = acc.get(key, 0) + c * ca
        return LeftIdealTensorElement._from_clean({k: c for k, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, ToeplitzElement):
            return self.left_mul(other)
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ToeplitzElement):
            return self.right_mul(other)
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_elementary(c, _v_e_label(i), str(y)) for (i, y), c in self.items())

    def __repr__(self) -> str:
        return f"LeftIdealTensorElement({str(self)!r})"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    i, j = a
    k, l = b
    if j >= k:
        return Monomial(i, j - k + l)
    return Monomial(i + k - j, l)


class Omega1Element:
    """A 1-form ``(tensor part, ideal part)``."""

    __slots__ = ("tensor_part", "ideal_part")

    def __init__(self, tensor_part: TensorElement | None = None, ideal_part: LeftIdealTensorElement | None = None):
        self.tensor_part = TensorElement.zero() if tensor_part is None else tensor_part
        self.ideal_part = LeftIdealTensorElement.zero() if ideal_part is None else ideal_part

    @classmethod
    def zero(cls) -> "Omega1Element":
        return cls()

    def is_zero(self) -> bool:
        return self.tensor_part.is_zero() and self.ideal_part.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Omega1Element):
            return NotImplemented
        return self.tensor_part == other.tensor_part and self.ideal_part == other.ideal_part

    def __hash__(self) -> int:
        return hash((self.tensor_part, self.ideal_part))

    def __add__(self, other: "Omega1Element") -> "Omega1Element":
        if not isinstance(other, Omega1Element):
            return NotImplemented
        return Omega1Element(self.tensor_part + other.tensor_part, self.ideal_part + other.ideal_part)

    def __neg__(self) -> "Omega1Element":
        return Omega1Element(-self.tensor_part, -self.ideal_part)

    def __sub__(self, other: "Omega1Element") -> "Omega1Element":
        return self + (-other)

    def scaled(self, c) -> "Omega1Element":
        return Omega1Element(self.tensor_part.scaled(c), self.ideal_part.scaled(c))

    def __rmul__(self, other):
        if isinstance(other, ToeplitzElement):
            return Omega1Element(self.tensor_part.left_mul(other), self.ideal_part.left_mul(other))
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ToeplitzElement):
            return Omega1Element(self.tensor_part.right_mul(other), self.ideal_part.right_mul(other))
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __str__(self) -> str:
        return f"({self.tensor_part} ; {self.ideal_part})"

    def __repr__(self) -> str:
        return f"Omega1Element({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "tensor_part": [
                {"left": list(x), "right": list(y), "coeff": format_rational(c)}
                for (x, y), c in self.tensor_part.items()
            ],
            "ideal_part": [
                {"v_power": i, "right": list(y), "coeff": format_rational(c)}
                for (i, y), c in self.ideal_part.items()
            ],
        }


def left_act(a: ToeplitzElement, w: Omega1Element) -> Omega1Element:
    return a * w


def right_act(w: Omega1Element, a: ToeplitzElement) -> Omega1Element:
    return w * a


# -- the universal derivation ------------------------------------------------

def _d_monomial(i: int, j: int) -> Omega1Element:
    tensor: dict = {}
    ideal: dict = {}
    for k in range(i):
        # v^k dv v^(i-k-1) u^j
        key = (Monomial(k + 1, 0), Monomial(i - k, j))
        tensor[key] = tensor.get(key, 0) - 1
        ideal[(k, Monomial(i - k - 1, j))] = Fraction(1)
    for l in range(j):
        # v^i u^l du u^(j-l-1)
        key = (Monomial(i, l), Monomial(0, j - l - 1))
        tensor[key] = tensor.get(key, 0) + 1
    return Omega1Element(TensorElement(tensor), LeftIdealTensorElement(ideal))


def d_universal(a: ToeplitzElement) -> Omega1Element:
    """Universal derivation, via the explicit monomial expansion
    ``d(v^i u^j) = d(v^i) u^j + v^i d(u^j)``."""
    tensor = TensorElement.zero()
    ideal = LeftIdealTensorElement.zero()
    for (i, j), c in a.items():
        w = _d_monomial(i, j)
        tensor = tensor + w.tensor_part.scaled(c)
        ideal = ideal + w.ideal_part.scaled(c)
    return Omega1Element(tensor, ideal)


# -- bimodule catalog and derivations ----------------------------------------

@dataclass(frozen=True)
class BimoduleInstance:
    """A concrete bimodule over the Toeplitz algebra with evaluable actions."""

    name: str
    zero: Callable[[], object]
    random: Callable[..., object]

    def left(self, a: ToeplitzElement, m):
        return a * m

    def right(self, m, a: ToeplitzElement):
        return m * a

    def in_eM(self, m) -> bool:
        return self.left(E, m) == m


def _random_tensor(rng, degree: int, max_terms: int = 3) -> TensorElement:
    acc = TensorElement.zero()
    for _ in range(rng.randint(1, max_terms)):
        x = ToeplitzElement.monomial(rng.randint(0, degree), rng.randint(0, degree))
        y = ToeplitzElement.monomial(rng.randint(0, degree), rng.randint(0, degree))
        acc = acc + TensorElement.pure(x, y).scaled(rng.randint(-9, 9))
    return acc


def _random_ideal(rng, degree: int, max_terms: int = 3) -> LeftIdealTensorElement:
    return LeftIdealTensorElement(
        [((rng.randint(0, degree), (rng.randint(0, degree), rng.randint(0, degree))), rng.randint(-9, 9))
         for _ in range(rng.randint(1, max_terms))]
    )


def random_omega1(rng, degree: int) -> Omega1Element:
    return Omega1Element(_random_tensor(rng, degree), _random_ideal(rng, degree))


BIMODULES: dict[str, BimoduleInstance] = {
    "A": BimoduleInstance("A", ToeplitzElement.zero, lambda rng, d: random_element(rng, d)),
    "AxA": BimoduleInstance("AxA", TensorElement.zero, _random_tensor),
    "Omega1": BimoduleInstance("Omega1", Omega1Element.zero, random_omega1),
}


class Derivation:
    """Derivation into ``module`` determined by ``du`` and ``dv``.

    ``d(v^i u^j) = sum_k v^k dv v^(i-k-1) u^j + sum_l v^i u^l du u^(j-l-1)``;
    this is well defined exactly when ``u dv + du v = 0``.
    """

    def __init__(self, module: BimoduleInstance, du, dv):
        self.module = module
        self.du = du
        self.dv = dv

    def relation(self):
        """``u dv + du v``; zero for a genuine derivation."""
        M = self.module
        return M.left(U, self.dv) + M.right(self.du, V)

    def on_monomial(self, i: int, j: int):
        M = self.module
        acc = M.zero()
        for k in range(i):
            acc = acc + M.right(M.left(ToeplitzElement.monomial(k, 0), self.dv), ToeplitzElement.monomial(i - k - 1, j))
        for l in range(j):
            acc = acc + M.right(M.left(ToeplitzElement.monomial(i, l), self.du), ToeplitzElement.monomial(0, j - l - 1))
        return acc

    def __call__(self, a: ToeplitzElement):
        acc = self.module.zero()
        for (i, j), c in a.items():
            acc = acc + self.on_monomial(i, j).scaled(c)
        return acc


def der_from_pair(M: BimoduleInstance, m, ell) -> Derivation:
    """``(m, l) -> d`` with ``du = m`` and ``dv = -v m v + l``; needs ``e l = l``."""
    if not M.in_eM(ell):
        raise ValueError("second component must lie in eM (e*l == l)")
    dv = -M.right(M.left(V, m), V) + ell
    return Derivation(M, m, dv)


def pair_from_der(M: BimoduleInstance, d: Callable[[ToeplitzElement], object]):
    """``d -> (du, dv + v du v)``."""
    m = d(U)
    ell = d(V) + M.right(M.left(V, m), V)
    if not M.in_eM(ell):
        raise ValueError("derivation does not satisfy u dv + du v = 0")
    return m, ell


def _leibniz_defect(d, M: BimoduleInstance, a: ToeplitzElement, b: ToeplitzElement):
    return d(mul(a, b)) - (M.right(d(a), b) + M.left(a, d(b)))


@timed_check
def leibniz_check(a: ToeplitzElement, b: ToeplitzElement) -> CheckReport:
    """``d(ab) = d(a) b + a d(b)`` for the universal derivation."""
    report = CheckReport("check leibniz-pair", {"a": str(a), "b": str(b)})
    defect = _leibniz_defect(d_universal, BIMODULES["Omega1"], a, b)
    report.payload = {"d(ab)": str(d_universal(mul(a, b)))}
    if defect:
        report.verdict = COUNTEREXAMPLE
        report.counterexample = {"defect": str(defect)}
    return report


@timed_check
def universal_pair_relation_check() -> CheckReport:
    """``u d(v) + d(u) v = 0`` in the bimodule of 1-forms."""
    left = U * d_universal(V)
    right = d_universal(U) * V
    report = CheckReport("check pair-relation", {})
    report.payload = {"u*dv": str(left), "du*v": str(right)}
    if left + right:
        report.verdict = COUNTEREXAMPLE
        report.counterexample = {"sum": str(left + right)}
    return report


# -- embedding into A (x) A ----------------------------------------------------

def embed_into_tensor_square(w: Omega1Element) -> TensorElement:
    """Bimodule map with ``d(a) -> 1 (x) a - a (x) 1``.

    ``(x (x) y, 0) -> x (x) u y - x u (x) y`` and
    ``(0, v^i e (x) y) -> v^i e (x) v y``.
    """
    acc: dict = {}
    for (x, y), c in w.tensor_part._terms.items():
        k1 = (x, _mono_mul(Monomial(0, 1), y))
        k2 = (_mono_mul(x, Monomial(0, 1)), y)
        acc[k1] = acc.get(k1, 0) + c
        acc[k2] = acc.get(k2, 0) - c
    for (i, y), c in w.ideal_part._terms.items():
        vy = _mono_mul(Monomial(1, 0), y)
        k1 = (Monomial(i, 0), vy)
        k2 = (Monomial(i + 1, 1), vy)
        acc[k1] = acc.get(k1, 0) + c
        acc[k2] = acc.get(k2, 0) - c
    return TensorElement._from_clean({k: c for k, c in acc.items() if c})


def multiplication_map(t: TensorElement) -> ToeplitzElement:
    acc: dict = {}
    for (x, y), c in t._terms.items():
        m = _mono_mul(x, y)
        acc[m] = acc.get(m, 0) + c
    return ToeplitzElement(acc)


def ideal_to_tensor(t: LeftIdealTensorElement) -> TensorElement:
    """Rewrite ``v^i e`` as ``v^i - v^(i+1) u`` in the first factor."""
    acc: dict = {}
    for (i, y), c in t._terms.items():
        acc[(Monomial(i, 0), y)] = acc.get((Monomial(i, 0), y), 0) + c
        acc[(Monomial(i + 1, 1), y)] = acc.get((Monomial(i + 1, 1), y), 0) - c
    return TensorElement._from_clean({k: c for k, c in acc.items() if c})


def project_to_ideal(t: TensorElement) -> LeftIdealTensorElement:
    """``x (x) y -> x e (x) y``; ``v^a u^b e`` vanishes unless ``b = 0``."""
    acc: dict = {}
    for (x, y), c in t._terms.items():
        if x.j == 0:
            acc[(x.i, y)] = acc.get((x.i, y), 0) + c
    return LeftIdealTensorElement(acc)


# -- norms and continuity ------------------------------------------------------

def tensor_norm(t: TensorElement, q: WeightSeq, p: WeightSeq) -> Fraction:
    """``sum |c| q_i p_j q_k p_l`` over ``v^i u^j (x) v^k u^l``."""
    return Fraction(sum(abs(c) * q(x.i) * p(x.j) * q(y.i) * p(y.j) for (x, y), c in t._terms.items()))


def omega1_norm(w: Omega1Element, q: WeightSeq, p: WeightSeq) -> Fraction:
    return tensor_norm(w.tensor_part, q, p) + tensor_norm(ideal_to_tensor(w.ideal_part), q, p)


def _norm_qp(a: ToeplitzElement, q: WeightSeq, p: WeightSeq) -> Fraction:
    return Fraction(sum(abs(c) * q(i) * p(j) for (i, j), c in a.items()))


@dataclass(frozen=True)
class ContinuityWitness:
    k: int
    p: WeightSeq
    q: WeightSeq
    p_prime: int
    q_prime: int
    q_double_prime: int
    C: Fraction
    C1: Fraction
    C2: Fraction
    p_prime_seq: WeightSeq
    q_double_prime_seq: WeightSeq

    def as_dict(self) -> dict:
        return {
            "k": self.k, "p_prime": self.p_prime, "q_prime": self.q_prime,
            "q_double_prime": self.q_double_prime, "C": self.C, "C1": self.C1, "C2": self.C2,
            "bound_2C2": 2 * self.C2,
        }


class MissingWitness(LookupError):
    pass


def _raise_to_dominate(seq: WeightSeq, idx: int, family: WeightFamily, horizon: int) -> int:
    cand = family.generator(idx)
    if all(seq(n) <= cand(n) for n in range(horizon + 1)):
        return idx
    r = search_upper_bound([seq, cand], family, horizon)
    if r is None:
        raise MissingWitness(f"no generator of {family.name} dominates both {seq.name} and {cand.name}")
    return r


def continuity_witness(P: WeightFamily, k: int, Q: WeightFamily | None = None, horizon: int = 200) -> ContinuityWitness:
    """Constants for the bound on the universal derivation with ``p = P[k]``,
    ``q = Q[k]``: ``p*p <= C p'``, ``q*q <= C q'``, ``q'_{a+b} <= C1 q''_a q''_b``,
    normalized to ``p <= p'`` and ``q <= q' <= q''``; ``C2 = C (C1 q''_1 + p_1 + 1)``.

    The witness search range is widened to ``2k + 2`` generators when the
    family bound is smaller, since the self-convolution of ``P[k]`` needs a
    generator of roughly twice the index.
    """
    Q = P if Q is None else Q
    bound = max(P.index_bound, Q.index_bound, 2 * k + 2)
    P, Q = P.with_index_bound(bound), Q.with_index_bound(bound)
    p, q = P.generator(k), Q.generator(k)
    dp = search_dominating(convolve(p, p, horizon), P, horizon)
    dq = search_dominating(convolve(q, q, horizon), Q, horizon)
    if dp is None or dq is None:
        raise MissingWitness(f"no dominance witness for generator {k} within index {bound}")
    C = max(dp[0], dq[0])
    ip = _raise_to_dominate(p, dp[1], P, horizon)
    iq = _raise_to_dominate(q, dq[1], Q, horizon)
    qq = Q.generator(iq)
    split = search_weighted_witness(qq, Q, horizon)
    if split is None:
        raise MissingWitness(f"no splitting witness for {qq.name}")
    C1 = split[0]
    iqq = _raise_to_dominate(qq, split[1], Q, horizon)
    qqq = Q.generator(iqq)
    C2 = C * (C1 * qqq(1) + p(1) + 1)
    return ContinuityWitness(k, p, q, ip, iq, iqq, Fraction(C), Fraction(C1), Fraction(C2), P.generator(ip), qqq)


def _continuity_params(P, Q, k, degree, samples, seed, grid, horizon) -> dict:
    return {
        "family": P.name, **P.params, "Q": Q.name, "k": k, "degree": degree, "samples": samples,
        "seed": seed, "grid": grid, "horizon": horizon,
    }


@timed_check
def check_continuity_bound(
    P: WeightFamily,
    k: int,
    degree: int = 8,
    samples: int = 500,
    seed: int = 0,
    Q: WeightFamily | None = None,
    grid: int = 30,
    horizon: int = 200,
) -> CheckReport:
    """The three estimates on the universal derivation:
    ``||d(v^i) u^j||' <= C2 ||v^i u^j||_{q'',p}`` and
    ``||v^i d(u^j)||' <= C ||v^i u^j||_{q,p'}`` for ``i, j <= grid``, and
    ``||d(a)||' <= 2 C2 ||a||_{q'',p'}`` on random ``a``."""
    Q = P if Q is None else Q
    report = CheckReport("check continuity", _continuity_params(P, Q, k, degree, samples, seed, grid, horizon))
    try:
        w = continuity_witness(P, k, Q, horizon)
    except MissingWitness as exc:
        report.verdict = NO_WITNESS
        report.counterexample = {"missing": str(exc)}
        return report
    report.witness = w.as_dict()
    p, q, pp, qqq = w.p, w.q, w.p_prime_seq, w.q_double_prime_seq
    for i in range(grid + 1):
        dvi = d_universal(ToeplitzElement.monomial(i, 0))
        for j in range(grid + 1):
            uj = ToeplitzElement.monomial(0, j)
            lhs = omega1_norm(dvi * uj, q, p)
            rhs = w.C2 * _weight_product(qqq, p, i, j)
            if lhs > rhs:
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"estimate": "d(v^i)u^j", "i": i, "j": j, "lhs": lhs, "rhs": rhs}
                return report
            lhs = omega1_norm(ToeplitzElement.monomial(i, 0) * d_universal(uj), q, p)
            rhs = w.C * _weight_product(q, pp, i, j)
            if lhs > rhs:
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"estimate": "v^i d(u^j)", "i": i, "j": j, "lhs": lhs, "rhs": rhs}
                return report
    worst = _sampled_ratio(w, degree, samples, seed)
    report.max_ratio = worst[0]
    if worst[0] > 2 * w.C2:
        report.verdict = COUNTEREXAMPLE
        report.counterexample = {"estimate": "d(a)", "sample": worst[1], "element": worst[2], "ratio": worst[0]}
    return report


def _weight_product(qw: WeightSeq, pw: WeightSeq, i: int, j: int):
    return qw(i) * pw(j)


def _sampled_ratio(w: ContinuityWitness, degree: int, samples: int, seed: int):
    worst = (Fraction(0), None, None)
    for s in range(samples):
        a = random_element(rng_for(seed, "continuity", s), degree)
        denom = _norm_qp(a, w.q_double_prime_seq, w.p_prime_seq)
        if not denom:
            continue
        ratio = omega1_norm(d_universal(a), w.q, w.p) / denom
        if ratio > worst[0]:
            worst = (ratio, s, a)
    return worst


@timed_check
def check_diagram_D(
    P: WeightFamily,
    k: int,
    degree: int = 8,
    samples: int = 500,
    seed: int = 0,
    Q: WeightFamily | None = None,
    horizon: int = 200,
) -> CheckReport:
    """Boundedness of ``a -> d(a)`` from ``||.||_{q'',p'}`` to ``||.||'_{q,p}``
    with constant ``2 C2``; reports the largest sampled ratio."""
    Q = P if Q is None else Q
    report = CheckReport("check diagram-D", _continuity_params(P, Q, k, degree, samples, seed, None, horizon))
    try:
        w = continuity_witness(P, k, Q, horizon)
    except MissingWitness as exc:
        report.verdict = NO_WITNESS
        report.counterexample = {"missing": str(exc)}
        return report
    report.witness = w.as_dict()
    worst = _sampled_ratio(w, degree, samples, seed)
    report.max_ratio = worst[0]
    single = omega1_norm(d_universal(V), w.q, w.p) / _norm_qp(V, w.q_double_prime_seq, w.p_prime_seq)
    report.payload = {"ratio_at_v": single}
    if worst[0] > 2 * w.C2 or single > 2 * w.C2:
        report.verdict = COUNTEREXAMPLE
        report.counterexample = {"sample": worst[1], "element": worst[2], "ratio": worst[0]}
    return report


# -- batch suite -----------------------------------------------------------------

@timed_check
def check_omega1_suite(
    seed: int = 0,
    leibniz_samples: int = 1000,
    pair_samples: int = 100,
    embed_samples: int = 500,
    degree: int = 6,
) -> CheckReport:
    """Leibniz rule, the pair relation, both round trips between derivations
    and pairs, and the embedding into ``A (x) A``."""
    params = {
        "seed": seed, "leibniz_samples": leibniz_samples, "pair_samples": pair_samples,
        "embed_samples": embed_samples, "degree": degree,
    }
    report = CheckReport("check omega1-suite", params)
    omega = BIMODULES["Omega1"]

    def fail(**cex):
        report.verdict = COUNTEREXAMPLE
        report.counterexample = cex
        return report

    for s in range(leibniz_samples):
        rng = rng_for(seed, "leibniz", s)
        a, b = random_element(rng, degree), random_element(rng, degree)
        if _leibniz_defect(d_universal, omega, a, b):
            return fail(part="leibniz", sample=s, a=a, b=b)
    if not universal_pair_relation_check().ok:
        return fail(part="pair_relation")
    A = BIMODULES["A"]
    for s in range(pair_samples):
        rng = rng_for(seed, "phi-psi", s)
        m = random_element(rng, degree)
        ell = E * random_element(rng, degree)
        d = der_from_pair(A, m, ell)
        if d.relation():
            return fail(part="phi relation", sample=s, m=m, ell=ell)
        if pair_from_der(A, d) != (m, ell):
            return fail(part="psi o phi", sample=s, m=m, ell=ell)
        back = der_from_pair(A, *pair_from_der(A, d))
        if (back.du, back.dv) != (d.du, d.dv):
            return fail(part="phi o psi", sample=s, m=m, ell=ell)
    m0, l0 = pair_from_der(omega, d_universal)
    d_rebuilt = der_from_pair(omega, m0, l0)
    for mono in (U, V, V * U, ToeplitzElement.monomial(2, 3)):
        if d_rebuilt(mono) != d_universal(mono):
            return fail(part="universal pair", element=mono)
    for s in range(embed_samples):
        rng = rng_for(seed, "embed", s)
        w = random_omega1(rng, degree)
        if multiplication_map(embed_into_tensor_square(w)):
            return fail(part="mu o embed", sample=s, form=str(w))
        a = random_element(rng, degree)
        lhs = embed_into_tensor_square(d_universal(a))
        rhs = TensorElement.pure(ONE, a) - TensorElement.pure(a, ONE)
        if lhs != rhs:
            return fail(part="embed o d", sample=s, element=a)
        x, y = random_element(rng, degree), random_element(rng, degree)
        if embed_into_tensor_square(x * w * y) != x * embed_into_tensor_square(w) * y:
            return fail(part="embed bimodule map", sample=s, form=str(w))
        if project_to_ideal(ideal_to_tensor(w.ideal_part)) != w.ideal_part:
            return fail(part="ideal basis", sample=s, form=str(w))
    report.payload = {"universal_pair": {"m": str(m0), "ell": str(l0)}}
    return report


@timed_check
def check_leibniz_batch(samples: int = 1000, degree: int = 6, seed: int = 0) -> CheckReport:
    """``d(ab) = d(a) b + a d(b)`` for the universal derivation on random pairs."""
    report = CheckReport("check leibniz", {"samples": samples, "degree": degree, "seed": seed})
    omega = BIMODULES["Omega1"]
    for s in range(samples):
        rng = rng_for(seed, "leibniz", s)
        a, b = random_element(rng, degree), random_element(rng, degree)
        defect = _leibniz_defect(d_universal, omega, a, b)
        if defect:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"sample": s, "a": a, "b": b, "defect": str(defect)}
            return report
    return report
