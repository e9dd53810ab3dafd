"""Command-line entry points.  Every command prints one JSON report to stdout.

Exit codes: 0 verified or computed, 1 counterexample, 2 usage error,
3 search exhausted without a witness.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .batch import check_basis_round_trip, check_oracle
from .core import mul
from .extensions import CocycleSpec, ExtAlgebra, NonAssociative, check_splitting_batch, split_extension
from .omega1 import (
    check_continuity_bound,
    check_diagram_D,
    check_leibniz_batch,
    check_omega1_suite,
    d_universal,
    omega1_norm,
)
from .parser import ParseError, parse
from .reports import COMPUTED, EXIT_USAGE, CheckReport, timed_check
from .seminorms import check_hol_equivalence, check_smooth_equivalence, check_submultiplicative, norm_qp
from .weights import (
    HorizonExceeded,
    UnknownFamily,
    WeightFamily,
    check_dominated,
    check_kothe,
    check_m_weighted,
    check_monotone,
    check_weighted,
    construct_dominating_weight,
    convolved_family,
    family_from_descriptor,
    get_family,
    table_family,
)


class UsageError(Exception):
    pass


def _radius(text):
    if text is None or text == "inf":
        return None if text is None else "inf"
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"bad radius {text!r}")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")


def _family(name: str, radius=None, index_bound: int = 10) -> WeightFamily:
    """A builtin name, ``conv:NAME`` or a path to a JSON family descriptor."""
    if name.startswith("conv:"):
        raise UsageError("conv: families are only accepted by 'check dominated --left'")
    if name.endswith(".json"):
        desc = _load_json(name)
        if isinstance(desc, list):
            return table_family(Path(name).stem, desc)
        return family_from_descriptor(desc, index_bound)
    return get_family(name, radius=_radius(radius), index_bound=index_bound)


def _generator(args):
    P = _family(args.family, args.radius)
    return P, P.generator(args.k)


@timed_check
def cmd_mul(args) -> CheckReport:
    a, b = parse(args.a), parse(args.b)
    return CheckReport("mul", {"a": args.a, "b": args.b}, COMPUTED, payload={"result": mul(a, b)})


@timed_check
def cmd_norm(args) -> CheckReport:
    a = parse(args.expr)
    P, g = _generator(args)
    params = {"expr": args.expr, "family": P.name, **P.params, "k": args.k}
    return CheckReport("norm", params, COMPUTED, payload={"element": a, "norm": norm_qp(a, g, g)})


@timed_check
def cmd_d1(args) -> CheckReport:
    a = parse(args.expr)
    w = d_universal(a)
    params = {"expr": args.expr}
    payload = {"d": str(w), "json": w.to_json()}
    if args.norm_family:
        if args.k is None:
            raise UsageError("--norm-family needs --k")
        args.family = args.norm_family
        P, g = _generator(args)
        params.update({"norm_family": P.name, "k": args.k})
        payload["norm"] = omega1_norm(w, g, g)
    return CheckReport("d1", params, COMPUTED, payload=payload)


_FAMILY_CHECKS = {
    "kothe": check_kothe,
    "weighted": check_weighted,
    "m-weighted": check_m_weighted,
    "monotone": check_monotone,
}


def cmd_check(args) -> CheckReport:
    what = args.what
    if what in _FAMILY_CHECKS:
        return _FAMILY_CHECKS[what](_family(args.family, args.radius, args.index_bound), args.horizon)
    if what == "dominated":
        if not args.left.startswith("conv:"):
            raise UsageError("--left must have the form conv:FAMILY or conv:FAMILY,FAMILY")
        names = args.left[len("conv:"):].split(",")
        if len(names) not in (1, 2):
            raise UsageError("conv: takes one or two family names")
        fams = [_family(n, args.radius, args.index_bound) for n in names]
        left = convolved_family(fams[0], args.horizon, fams[-1] if len(fams) == 2 else None)
        right_bound = args.right_index_bound or 2 * args.index_bound + 1
        right = _family(args.right, args.radius, right_bound)
        return check_dominated(left, right, args.horizon)
    if what == "smooth-equivalence":
        return check_smooth_equivalence(args.kmax, args.degree or 10, args.samples or 1000, args.seed)
    if what == "hol-equivalence":
        return check_hol_equivalence(args.kmax, args.degree or 6, args.samples or 200, args.seed)
    if what in ("continuity", "diagram-d"):
        P = _family(args.family, args.radius, args.index_bound)
        fn = check_continuity_bound if what == "continuity" else check_diagram_D
        return fn(P, args.k, degree=args.degree or 8, samples=args.samples or 500, seed=args.seed)
    if what == "submultiplicative":
        P = _family(args.family, args.radius, args.index_bound)
        return check_submultiplicative(P, degree=args.degree or 4, samples=args.samples or 100, seed=args.seed)
    if what == "leibniz":
        return check_leibniz_batch(args.samples or 1000, args.degree or 6, args.seed)
    if what == "omega1-suite":
        return check_omega1_suite(args.seed)
    if what == "basis-round-trip":
        return check_basis_round_trip(args.bound, args.samples or 200, args.seed)
    if what == "splitting-batch":
        return check_splitting_batch(args.cocycles, args.degree or 4, args.samples or 200, args.seed)
    raise UsageError(f"unknown check {what!r}")


@timed_check
def cmd_split(args) -> CheckReport:
    spec = CocycleSpec.from_json(_load_json(args.xi), parse)
    try:
        E = ExtAlgebra(spec, seed=args.seed)
    except NonAssociative as exc:
        raise UsageError(str(exc))
    _, report = split_extension(E, args.degree, args.samples, args.seed)
    return report


def cmd_oracle(args) -> CheckReport:
    return check_oracle(args.dim, args.samples, args.degree, args.seed)


@timed_check
def cmd_construct_weight(args) -> CheckReport:
    data = _load_json(args.table)
    if isinstance(data, dict):
        data = data.get("table")
    if not isinstance(data, list):
        raise UsageError('table JSON must be a list of [n, "value"] rows or an object with a "table" list')
    P = table_family(Path(args.table).stem, data)
    p = P.generator(1)
    out = construct_dominating_weight(p, args.horizon)
    params = {"table": Path(args.table).name, "horizon": args.horizon}
    return CheckReport("construct-weight", params, COMPUTED, payload={"p_prime": out.values(args.horizon)})


_CHECK_CHOICES = [
    "kothe", "weighted", "m-weighted", "monotone", "dominated", "smooth-equivalence", "hol-equivalence",
    "continuity", "diagram-d", "submultiplicative", "leibniz", "omega1-suite", "basis-round-trip",
    "splitting-batch",
]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--no-timing", action="store_true", help="write runtime_ms as 0")

    parser = _Parser(prog="toeplitz-qf", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mul", parents=[common], help="multiply two expressions")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("norm", parents=[common], help="weighted norm of an expression")
    p.add_argument("expr")
    p.add_argument("--family", required=True)
    p.add_argument("--radius")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("d1", parents=[common], help="universal derivation of an expression")
    p.add_argument("expr")
    p.add_argument("--norm-family")
    p.add_argument("--radius")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_d1)

    p = sub.add_parser("check", parents=[common], help="run a verification batch")
    p.add_argument("what", choices=_CHECK_CHOICES)
    p.add_argument("--family", default="smooth")
    p.add_argument("--radius")
    p.add_argument("--left", default="conv:smooth")
    p.add_argument("--right", default="smooth")
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--index-bound", type=int, default=10)
    p.add_argument("--right-index-bound", type=int, help="dominated: defaults to 2*index-bound+1")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--degree", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--cocycles", type=int, default=100)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("split", parents=[common], help="split the extension given by a cocycle table")
    p.add_argument("--xi", required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("oracle", parents=[common], help="compare products with shift matrices")
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("construct-weight", parents=[common], help="greedy submultiplicative majorant")
    p.add_argument("--table", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(func=cmd_construct_weight)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
    except (UsageError, ParseError, UnknownFamily, HorizonExceeded, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json(timing=not args.no_timing))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
