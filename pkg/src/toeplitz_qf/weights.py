"""Weight families on the nonnegative integers and horizon-bounded checks of
their axioms.

A family is a countable set of generators ``p^(k)``, each a nonnegative
rational sequence.  Every check here is a finite verification: positions up
to ``horizon`` and generator indices up to the family's ``index_bound``.  A
"verified" verdict never claims more than that.

Witness searches return the candidate with the smallest exact constant,
ties broken by the smallest generator index.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable

from .core import format_rational
from .reports import (
    COUNTEREXAMPLE,
    NO_WITNESS,
    VERIFIED,
    WITNESS_FOUND,
    CheckReport,
    timed_check,
)

__all__ = [
    "HorizonExceeded",
    "UnknownFamily",
    "WeightSeq",
    "WeightFamily",
    "smooth",
    "formal",
    "holomorphic",
    "table_family",
    "catalog",
    "get_family",
    "family_from_descriptor",
    "convolve",
    "convolved_family",
    "max_ratio",
    "search_weighted_witness",
    "search_dominating",
    "ratio_settles",
    "search_upper_bound",
    "check_kothe",
    "check_weighted",
    "check_m_weighted",
    "check_monotone",
    "check_dominated",
    "construct_dominating_weight",
]

INF = "inf"


class HorizonExceeded(ValueError):
    """A table-backed weight was evaluated beyond its tabulated range."""


class UnknownFamily(ValueError):
    pass


class WeightSeq:
    """A single sequence ``n -> weight`` with exact rational values.

    ``horizon_bound`` is ``None`` for closed-form sequences; table-backed
    sequences refuse positions past it.
    """

    __slots__ = ("name", "horizon_bound", "_fn", "_cache")

    def __init__(self, fn: Callable[[int], object], name: str = "p", horizon_bound: int | None = None):
        self._fn = fn
        self.name = name
        self.horizon_bound = horizon_bound
        self._cache: dict[int, object] = {}

    @classmethod
    def from_values(cls, values: Iterable, name: str = "p") -> "WeightSeq":
        vals = [_exact(x) for x in values]
        return cls(vals.__getitem__, name, len(vals) - 1)

    def __call__(self, n: int):
        if n < 0:
            raise ValueError("weights are indexed by nonnegative integers")
        if self.horizon_bound is not None and n > self.horizon_bound:
            raise HorizonExceeded(
                f"{self.name} is tabulated up to position {self.horizon_bound}, asked for {n}"
            )
        try:
            return self._cache[n]
        except KeyError:
            val = _exact(self._fn(n))
            if val < 0:
                raise ValueError(f"negative weight {self.name}[{n}] = {val}")
            self._cache[n] = val
            return val

    def values(self, horizon: int) -> list:
        return [self(n) for n in range(horizon + 1)]

    def __repr__(self) -> str:
        return f"WeightSeq({self.name})"


def _exact(x):
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class WeightFamily:
    """Generators ``p^(k)`` for ``first_index <= k <= index_bound``."""

    name: str
    make: Callable[[int], WeightSeq] = field(repr=False, compare=False)
    kind: str = "builtin"
    params: dict = field(default_factory=dict)
    first_index: int = 1
    index_bound: int = 10
    horizon_bound: int | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def generator(self, k: int) -> WeightSeq:
        if k < self.first_index:
            raise ValueError(f"{self.name} generators start at index {self.first_index}")
        seq = self._cache.get(k)
        if seq is None:
            seq = self._cache[k] = self.make(k)
        return seq

    def indices(self) -> range:
        return range(self.first_index, self.index_bound + 1)

    def generators(self):
        return [(k, self.generator(k)) for k in self.indices()]

    def with_index_bound(self, bound: int) -> "WeightFamily":
        return replace(self, index_bound=bound)

    def require_horizon(self, horizon: int) -> None:
        if horizon < 0:
            raise ValueError("horizon must be nonnegative")
        if self.horizon_bound is not None and horizon > self.horizon_bound:
            raise HorizonExceeded(
                f"family {self.name} is tabulated up to {self.horizon_bound}; horizon {horizon} rejected"
            )

    def descriptor(self) -> dict:
        d = {"name": self.name, "kind": self.kind, "params": dict(self.params)}
        if self.kind == "table":
            seq = self.generator(self.first_index)
            d["table"] = [[n, format_rational(seq(n))] for n in range(self.horizon_bound + 1)]
        return d


def smooth(index_bound: int = 10) -> WeightFamily:
    """``p^(k)_n = (1 + n)^k``."""
    return WeightFamily("smooth", _smooth_gen, index_bound=index_bound)


def _smooth_gen(k: int) -> WeightSeq:
    return WeightSeq(lambda n: (1 + n) ** k, f"smooth[{k}]")


def formal(index_bound: int = 10) -> WeightFamily:
    """``p^(k) = (1, ..., 1, 0, 0, ...)`` with ``k`` leading ones."""
    return WeightFamily("formal", _formal_gen, index_bound=index_bound)


def _formal_gen(k: int) -> WeightSeq:
    return WeightSeq(lambda n: 1 if n < k else 0, f"formal[{k}]")


def holomorphic(radius=INF, index_bound: int = 10) -> WeightFamily:
    """``p^(k)_n = r_k^n`` with radii ``r_k`` increasing to ``radius``.

    For an infinite radius ``r_k = k``; for finite ``R`` the radii are
    ``r_k = R k / (k + 1)``.
    """
    if radius in (INF, None) or (isinstance(radius, float) and radius == float("inf")):
        return WeightFamily("holomorphic", _hol_inf_gen, params={"radius": INF}, index_bound=index_bound)
    R = Fraction(radius)
    if R <= 0:
        raise ValueError("holomorphic radius must be positive")

    def make(k: int) -> WeightSeq:
        r = R * k / (k + 1)
        return WeightSeq(lambda n: r**n, f"holomorphic(R={format_rational(R)})[{k}]")

    return WeightFamily("holomorphic", make, params={"radius": format_rational(R)}, index_bound=index_bound)


def _hol_inf_gen(k: int) -> WeightSeq:
    return WeightSeq(lambda n: k**n, f"holomorphic[{k}]")


def table_family(name: str, table: Iterable) -> WeightFamily:
    """Single-generator family from ``[[n, value], ...]`` covering ``0..H``."""
    rows = sorted((int(n), Fraction(v)) for n, v in table)
    if [n for n, _ in rows] != list(range(len(rows))):
        raise ValueError("table must list every position 0..H exactly once")
    values = [_exact(v) for _, v in rows]
    if any(v < 0 for v in values):
        raise ValueError("table weights must be nonnegative")
    seq = WeightSeq.from_values(values, name)
    return WeightFamily(
        name, lambda k, _s=seq: _s, kind="table", first_index=1, index_bound=1,
        horizon_bound=len(values) - 1,
    )


def catalog(index_bound: int = 10) -> list[WeightFamily]:
    return [formal(index_bound), smooth(index_bound), holomorphic(INF, index_bound)]


def get_family(name: str, radius=None, index_bound: int = 10) -> WeightFamily:
    if name == "smooth":
        return smooth(index_bound)
    if name == "formal":
        return formal(index_bound)
    if name in ("holomorphic", "hol"):
        return holomorphic(INF if radius is None else radius, index_bound)
    raise UnknownFamily(f"unknown weight family {name!r}")


def family_from_descriptor(desc: dict, index_bound: int = 10) -> WeightFamily:
    kind = desc.get("kind", "builtin")
    if kind == "table":
        if "table" not in desc:
            raise ValueError("table family descriptor needs a 'table' entry")
        return table_family(desc.get("name", "table"), desc["table"])
    if kind == "builtin":
        radius = desc.get("params", {}).get("radius")
        return get_family(desc["name"], radius=radius, index_bound=index_bound)
    raise ValueError(f"unknown family kind {kind!r}")


def convolve(p: WeightSeq, q: WeightSeq, horizon: int) -> WeightSeq:
    """``(p*q)_n = sum_{i+j=n} p_i q_j`` for ``n <= horizon``."""
    pv = p.values(horizon)
    qv = q.values(horizon)
    out = [sum(pv[i] * qv[n - i] for i in range(n + 1)) for n in range(horizon + 1)]
    return WeightSeq.from_values(out, f"({p.name}*{q.name})")


def convolved_family(P: WeightFamily, horizon: int, Q: WeightFamily | None = None) -> WeightFamily:
    """Family of self-convolutions ``p^(k) * q^(k)`` tabulated to ``horizon``."""
    Q = P if Q is None else Q
    name = f"conv:{P.name}" if Q is P else f"conv:{P.name}*{Q.name}"

    def make(k: int) -> WeightSeq:
        return convolve(P.generator(k), Q.generator(k), horizon)

    return WeightFamily(
        name, make, kind="convolution", params=dict(P.params), first_index=P.first_index,
        index_bound=P.index_bound, horizon_bound=horizon,
    )


# -- exact ratio search -------------------------------------------------------

class _Disqualified(Exception):
    pass


def max_ratio(pairs: Iterable[tuple], cap=None):
    """Exact ``max num/den`` over ``(num, den, where)`` triples.

    ``0/0`` is skipped; ``x/0`` with ``x > 0`` returns ``None``.  When ``cap``
    is given, the search stops early (returning ``None``) once the running
    maximum reaches ``cap``.  Returns ``(ratio, where)``; an empty or all
    vacuous input gives ratio 0.
    """
    best_n, best_d, best_at = 0, 1, None
    cap_n = cap_d = None
    if cap is not None:
        cap = Fraction(cap)
        cap_n, cap_d = cap.numerator, cap.denominator
    for num, den, where in pairs:
        if den == 0:
            if num == 0:
                continue
            return None
        if num == 0:
            continue
        # compare num/den > best_n/best_d by cross multiplication
        nn, nd = _nd(num)
        dn, dd = _nd(den)
        rn, rd = nn * dd, nd * dn
        if rn * best_d > best_n * rd:
            best_n, best_d, best_at = rn, rd, where
            if cap is not None and best_n * cap_d >= cap_n * best_d:
                return None
    return Fraction(best_n, best_d), best_at


def _nd(x):
    return x.numerator, x.denominator


def _pick(best, candidate):
    # candidate = (C, index, extra); keep smallest C, then smallest index
    if candidate is None:
        return best
    if best is None or candidate[0] < best[0] or (candidate[0] == best[0] and candidate[1] < best[1]):
        return candidate
    return best


def _weighted_pairs(p: WeightSeq, pp: WeightSeq, horizon: int):
    for i in range(horizon + 1):
        ppi = pp(i)
        for j in range(horizon + 1 - i):
            yield p(i + j), ppi * pp(j), (i, j)


def search_weighted_witness(p: WeightSeq, family: WeightFamily, horizon: int):
    """Best ``(C, index)`` with ``p_{i+j} <= C q_i q_j`` for ``i + j <= horizon``."""
    best = None
    for k, cand in family.generators():
        cap = best[0] if best is not None else None
        res = max_ratio(_weighted_pairs(p, cand, horizon), cap=cap)
        if res is None:
            continue
        best = _pick(best, (res[0], k, res[1]))
    return best


def ratio_settles(s: WeightSeq, q: WeightSeq, horizon: int) -> bool:
    """True when ``s_n / q_n`` is nonincreasing over the last quarter of the
    horizon (vacuous ``0/0`` positions skipped).

    A ratio still climbing at the horizon edge is treated as unbounded: the
    finite maximum it shows is an artifact of truncation.
    """
    tail = []
    for n in range(horizon - horizon // 4, horizon + 1):
        num, den = s(n), q(n)
        if den == 0:
            if num == 0:
                continue
            return False
        tail.append(Fraction(num) / den)
    return all(a >= b for a, b in zip(tail, tail[1:]))


def search_dominating(s: WeightSeq, family: WeightFamily, horizon: int):
    """Best ``(C, index)`` with ``s_n <= C q_n`` for ``n <= horizon``.

    Candidates whose ratio does not settle (see :func:`ratio_settles`) are
    skipped.
    """
    best = None
    for k, cand in family.generators():
        cap = best[0] if best is not None else None
        res = max_ratio(((s(n), cand(n), n) for n in range(horizon + 1)), cap=cap)
        if res is None or not ratio_settles(s, cand, horizon):
            continue
        best = _pick(best, (res[0], k, res[1]))
    return best


def search_upper_bound(seqs: list[WeightSeq], family: WeightFamily, horizon: int):
    """Smallest index ``r`` with ``max(seqs)_n <= r_n`` for ``n <= horizon``."""
    for k, cand in family.generators():
        if all(max(s(n) for s in seqs) <= cand(n) for n in range(horizon + 1)):
            return k
    return None


# -- checks --------------------------------------------------------------------

def _params(P: WeightFamily, horizon: int, **extra) -> dict:
    d = {"family": P.name, **P.params, "horizon": horizon, "index_bound": P.index_bound}
    d.update(extra)
    return d


@timed_check
def check_kothe(P: WeightFamily, horizon: int) -> CheckReport:
    """(P1) every position up to ``horizon`` is positive for some generator;
    (P2) every pair of generators up to ``index_bound`` is dominated by one.

    (P1) looks at generators up to ``index_bound + horizon`` so that families
    whose support grows with the index (``formal``) can be verified.  For a
    table family the generator list is complete and a failure is a genuine
    counterexample; otherwise it only means the search ran out.
    """
    P.require_horizon(horizon)
    report = CheckReport("check kothe", _params(P, horizon))
    complete = P.kind == "table"
    p1_bound = P.index_bound if complete else P.index_bound + horizon
    p1_gens = P.with_index_bound(p1_bound).generators()
    for n in range(horizon + 1):
        if not any(seq(n) > 0 for _, seq in p1_gens):
            report.verdict = COUNTEREXAMPLE if complete else NO_WITNESS
            report.counterexample = {"axiom": "P1", "position": n, "searched_up_to": p1_bound}
            return report
    gens = P.generators()
    pairs = []
    for a, (k, p) in enumerate(gens):
        for k2, q in gens[a:]:
            r = search_upper_bound([p, q], P, horizon)
            if r is None:
                report.verdict = COUNTEREXAMPLE if complete else NO_WITNESS
                report.counterexample = {"axiom": "P2", "pair": [k, k2]}
                return report
            pairs.append({"pair": [k, k2], "r": r})
    report.witness = {"P2": pairs}
    return report


@timed_check
def check_weighted(P: WeightFamily, horizon: int) -> CheckReport:
    P.require_horizon(horizon)
    report = CheckReport("check weighted", _params(P, horizon), verdict=WITNESS_FOUND)
    witnesses = []
    for k, p in P.generators():
        if p(0) != 1:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"generator": k, "position": 0, "value": p(0), "expected": 1}
            return report
        best = search_weighted_witness(p, P, horizon)
        if best is None:
            report.verdict = NO_WITNESS
            report.counterexample = {"generator": k}
            return report
        witnesses.append({"generator": k, "p_prime": best[1], "C": best[0]})
    report.witness = {"per_generator": witnesses}
    return report


@timed_check
def check_m_weighted(P: WeightFamily, horizon: int) -> CheckReport:
    P.require_horizon(horizon)
    report = CheckReport("check m-weighted", _params(P, horizon))
    for k, p in P.generators():
        if p(0) != 1:
            report.verdict = COUNTEREXAMPLE
            report.counterexample = {"generator": k, "position": 0, "value": p(0), "expected": 1}
            return report
        for lhs, rhs, (i, j) in _weighted_pairs(p, p, horizon):
            if lhs > rhs:
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"generator": k, "i": i, "j": j, "lhs": lhs, "rhs": rhs}
                return report
    report.witness = {"p_prime": "p", "C": 1}
    return report


@timed_check
def check_monotone(P: WeightFamily, horizon: int) -> CheckReport:
    P.require_horizon(horizon)
    report = CheckReport("check monotone", _params(P, horizon))
    for k, p in P.generators():
        for i in range(horizon):
            if p(i) > p(i + 1):
                report.verdict = COUNTEREXAMPLE
                report.counterexample = {"generator": k, "i": i, "p_i": p(i), "p_i+1": p(i + 1)}
                return report
    return report


@timed_check
def check_dominated(S: WeightFamily, Q: WeightFamily, horizon: int) -> CheckReport:
    S.require_horizon(horizon)
    Q.require_horizon(horizon)
    report = CheckReport(
        "check dominated",
        {"left": S.name, "right": Q.name, **Q.params, "horizon": horizon, "index_bound": Q.index_bound},
        verdict=WITNESS_FOUND,
    )
    witnesses = []
    for k, s in S.generators():
        best = search_dominating(s, Q, horizon)
        if best is None:
            report.verdict = NO_WITNESS
            report.counterexample = {"generator": k}
            return report
        witnesses.append({"generator": k, "q": best[1], "C": best[0]})
    report.witness = {"per_generator": witnesses}
    return report


def construct_dominating_weight(p: WeightSeq, horizon: int) -> WeightSeq:
    """Greedy submultiplicative majorant: ``p_{i+j} <= p'_i p'_j`` for
    ``i, j <= horizon``.

    ``p'_0 = 1`` and ``p'_{k+1} = max(max_{i<=k} p_{i+k+1} / p'_i, p_{2k+2}, 1)``.
    The last two terms make ``p'_{k+1}^2 >= p_{2k+2}`` without square roots.
    Needs ``p`` on positions ``0..2*horizon``.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    vals = p.values(2 * horizon)
    if vals[0] != 1:
        raise ValueError("dominating weight needs p_0 = 1")
    zeros = [n for n, x in enumerate(vals) if x == 0]
    if zeros:
        raise ValueError(f"dominating weight needs positive entries; p_{zeros[0]} = 0")
    out = [Fraction(1)]
    for k in range(horizon):
        cand = max(Fraction(vals[i + k + 1]) / out[i] for i in range(k + 1))
        out.append(max(cand, Fraction(vals[2 * k + 2]), Fraction(1)))
    for i in range(horizon + 1):
        for j in range(horizon + 1):
            if vals[i + j] > out[i] * out[j]:
                raise AssertionError(f"greedy majorant failed at ({i}, {j})")
    return WeightSeq.from_values(out, f"dominating({p.name})")
