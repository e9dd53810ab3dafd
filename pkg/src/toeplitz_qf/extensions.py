"""Square-zero extensions of the Toeplitz algebra and their splittings.

An extension is ``A + M`` with ``M = A`` as a bimodule over itself and the
product ``(a, m)(b, n) = (ab, a n + m b + w(a, b))``, where ``w`` is the
coboundary of a normalized linear map ``xi``:
``w(a, b) = a xi(b) - xi(ab) + xi(a) b``.  The kernel ``{(0, m)}`` squares to
zero.

Splitting follows the quasi-freeness argument: lift ``u, v`` to ``a, b``,
write ``ab = 1 + c`` with ``c`` in the kernel, and replace ``b`` by
``b' = b(1 - c)``; then ``ab' = 1`` and ``u -> a, v -> b'`` extends to a
homomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .core import ONE, Monomial, ToeplitzElement, mul
from .omega1 import BimoduleInstance
from .reports import COUNTEREXAMPLE, CheckReport, timed_check
from .sampling import random_element, rng_for

__all__ = [
    "CocycleSpec",
    "ExtElement",
    "ExtAlgebra",
    "NonAssociative",
    "ext_mul",
    "split_extension",
    "Splitting",
    "derivation_to_hom",
    "random_cocycle",
    "check_splitting_batch",
]


class NonAssociative(ValueError):
    pass


@dataclass(frozen=True)
class CocycleSpec:
    """Finite table ``monomial -> xi(monomial)``; unlisted monomials map to 0."""

    xi: Mapping[Monomial, ToeplitzElement] = field(default_factory=dict)

    def __post_init__(self):
        table = {}
        for mono, val in dict(self.xi).items():
            mono = Monomial(*mono)
            if mono == (0, 0) and val:
                raise ValueError("xi must be normalized: xi(1) = 0")
            if val:
                table[mono] = val
        object.__setattr__(self, "xi", table)

    @classmethod
    def from_json(cls, obj: dict, parse: Callable[[str], ToeplitzElement]) -> "CocycleSpec":
        """``{"xi": [{"monomial": [i, j], "value": "<expr>"}, ...]}``."""
        if not isinstance(obj, dict) or not isinstance(obj.get("xi"), list):
            raise ValueError('cocycle JSON must be an object with an "xi" list')
        table: dict = {}
        for entry in obj["xi"]:
            i, j = entry["monomial"]
            if int(i) < 0 or int(j) < 0:
                raise ValueError("monomial exponents must be nonnegative")
            value = parse(entry["value"])
            key = Monomial(int(i), int(j))
            table[key] = table.get(key, ToeplitzElement.zero()) + value
        return cls(table)

    def to_json(self) -> dict:
        return {"xi": [{"monomial": list(m), "value": str(v)} for m, v in sorted(self.xi.items())]}

    def apply(self, a: ToeplitzElement) -> ToeplitzElement:
        acc = ToeplitzElement.zero()
        for m, c in a.items():
            val = self.xi.get(m)
            if val is not None:
                acc = acc + val.scaled(c)
        return acc

    def omega(self, a: ToeplitzElement, b: ToeplitzElement) -> ToeplitzElement:
        return mul(a, self.apply(b)) - self.apply(mul(a, b)) + mul(self.apply(a), b)


@dataclass(frozen=True)
class ExtElement:
    a: ToeplitzElement
    m: ToeplitzElement

    def __add__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.a + other.a, self.m + other.m)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.a - other.a, self.m - other.m)

    def scaled(self, c) -> "ExtElement":
        return ExtElement(self.a.scaled(c), self.m.scaled(c))

    def __str__(self) -> str:
        return f"({self.a}, {self.m})"


class ExtAlgebra:
    """The twisted product on ``A + A``; associativity is sampled on
    construction (for coboundaries it holds identically)."""

    def __init__(self, cocycle: CocycleSpec | None = None, check_samples: int = 20, seed: int = 0, degree: int = 3):
        self.cocycle = CocycleSpec() if cocycle is None else cocycle
        for s in range(check_samples):
            rng = rng_for(seed, "ext-assoc", s)
            x, y, z = (self._random(rng, degree) for _ in range(3))
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise NonAssociative(f"product not associative on sample {s}: {x}, {y}, {z}")
            k1, k2 = ExtElement(ToeplitzElement.zero(), x.m), ExtElement(ToeplitzElement.zero(), y.m)
            if self.mul(k1, k2) != self.zero():
                raise NonAssociative("kernel does not square to zero")

    @staticmethod
    def _random(rng: random.Random, degree: int) -> ExtElement:
        return ExtElement(random_element(rng, degree, 3), random_element(rng, degree, 3))

    def one(self) -> ExtElement:
        return ExtElement(ONE, ToeplitzElement.zero())

    def zero(self) -> ExtElement:
        return ExtElement(ToeplitzElement.zero(), ToeplitzElement.zero())

    def lift(self, a: ToeplitzElement) -> ExtElement:
        return ExtElement(a, ToeplitzElement.zero())

    def mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return ExtElement(
            mul(x.a, y.a),
            mul(x.a, y.m) + mul(x.m, y.a) + self.cocycle.omega(x.a, y.a),
        )

    def power(self, x: ExtElement, n: int) -> ExtElement:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out


def ext_mul(x: ExtElement, y: ExtElement, E: ExtAlgebra) -> ExtElement:
    return E.mul(x, y)


class Splitting:
    """Homomorphism ``j`` with ``j(u) = a`` and ``j(v) = b'``."""

    def __init__(self, E: ExtAlgebra, a: ExtElement, b_prime: ExtElement):
        self.E = E
        self.a = a
        self.b_prime = b_prime
        self._words: dict[Monomial, ExtElement] = {}

    def on_word(self, i: int, j: int) -> ExtElement:
        key = Monomial(i, j)
        if key not in self._words:
            E = self.E
            self._words[key] = E.mul(E.power(self.b_prime, i), E.power(self.a, j))
        return self._words[key]

    def __call__(self, x: ToeplitzElement) -> ExtElement:
        acc = self.E.zero()
        for (i, j), c in x.items():
            acc = acc + self.on_word(i, j).scaled(c)
        return acc


def split_extension(E: ExtAlgebra, degree: int = 4, samples: int = 200, seed: int = 0):
    """Return ``(j, report)``.  The report covers ``a b' = 1``, ``p j = id`` on
    all words with ``i + j <= degree`` and ``j(xy) = j(x) j(y)`` on sampled
    pairs with monomials of total degree at most ``degree``."""
    report = CheckReport(
        "split", {"xi": E.cocycle.to_json(), "degree": degree, "samples": samples, "seed": seed}
    )
    a = E.lift(ToeplitzElement.monomial(0, 1))
    b = E.lift(ToeplitzElement.monomial(1, 0))
    ab = E.mul(a, b)
    c = ab - E.one()
    if c.a:
        raise AssertionError("lifts do not multiply to 1 modulo the kernel")
    b_prime = E.mul(b, E.one() - c)
    j = Splitting(E, a, b_prime)
    report.payload = {"c": str(c), "b_prime": str(b_prime)}

    def fail(**cex):
        report.verdict = COUNTEREXAMPLE
        report.counterexample = cex
        return j, report

    if E.mul(a, b_prime) != E.one():
        return fail(step="a*b' == 1", value=str(E.mul(a, b_prime)))
    words = [(i, n - i) for n in range(degree + 1) for i in range(n + 1)]
    for i, jj in words:
        if j.on_word(i, jj).a != ToeplitzElement.monomial(i, jj):
            return fail(step="p o j", word=[i, jj])
    for s in range(samples):
        rng = rng_for(seed, "split-pairs", s)
        x, y = _random_word_combo(rng, degree), _random_word_combo(rng, degree)
        if j(mul(x, y)) != E.mul(j(x), j(y)):
            return fail(step="multiplicativity", sample=s, x=x, y=y)
        if j(x).a != x:
            return fail(step="first component", sample=s, x=x)
    report.payload["words_checked"] = len(words)
    return j, report


def _random_word_combo(rng: random.Random, degree: int, max_terms: int = 3) -> ToeplitzElement:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(0, degree)
        i = rng.randint(0, n)
        terms.append(((i, n - i), rng.randint(-9, 9)))
    return ToeplitzElement(terms)


def random_cocycle(rng: random.Random, support: int = 5, coeff_range: int = 3, degree: int = 3) -> CocycleSpec:
    """Up to ``support`` non-identity monomials with random small values."""
    table: dict = {}
    for _ in range(rng.randint(1, support)):
        mono = (0, 0)
        while mono == (0, 0):
            mono = (rng.randint(0, degree), rng.randint(0, degree))
        table[Monomial(*mono)] = random_element(rng, degree, 3, coeff_range)
    return CocycleSpec(table)


@timed_check
def check_splitting_batch(
    cocycles: int = 100, degree: int = 4, samples: int = 200, seed: int = 0, support: int = 5, coeff_range: int = 3
) -> CheckReport:
    """Split ``cocycles`` random coboundary extensions."""
    params = {"cocycles": cocycles, "degree": degree, "samples": samples, "seed": seed,
              "support": support, "coeff_range": coeff_range}
    report = CheckReport("check splitting-batch", params)
    nontrivial = 0
    for t in range(cocycles):
        spec = random_cocycle(rng_for(seed, "cocycle", t), support, coeff_range)
        E = ExtAlgebra(spec, seed=seed)
        _, sub = split_extension(E, degree, samples, seed + t)
        if not sub.ok:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"cocycle": t, "xi": spec.to_json(), **(sub.counterexample or {})}
            return report
        if sub.payload["c"] != str(E.zero()):
            nontrivial += 1
    report.payload = {"nontrivial_c": nontrivial}
    return report


def derivation_to_hom(M: BimoduleInstance, d: Callable, samples: int = 200, seed: int = 0, degree: int = 4):
    """``phi(a) = (a, d(a))`` into the trivial extension ``A + M``.  Returns
    ``(phi, report)`` after checking ``phi(ab) = phi(a) phi(b)``."""
    report = CheckReport("derivation-to-hom", {"module": M.name, "samples": samples, "seed": seed, "degree": degree})

    def phi(a: ToeplitzElement):
        return (a, d(a))

    def product(x, y):
        return (mul(x[0], y[0]), M.left(x[0], y[1]) + M.right(x[1], y[0]))

    for s in range(samples):
        rng = rng_for(seed, "der-hom", s)
        a, b = random_element(rng, degree), random_element(rng, degree)
        lhs, rhs = phi(mul(a, b)), product(phi(a), phi(b))
        if lhs[0] != rhs[0] or lhs[1] != rhs[1]:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"sample": s, "a": a, "b": b}
            return phi, report
        if phi(a)[0] != a:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"sample": s, "a": a, "step": "p1 o phi"}
            return phi, report
    return phi, report
