"""Verdicts, check reports and their JSON form."""

from __future__ import annotations

import functools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import SparseVector, format_rational

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
WITNESS_FOUND = "witness_found"
NO_WITNESS = "no_witness_within_bounds"
COMPUTED = "computed"

VERDICTS = (VERIFIED, COUNTEREXAMPLE, WITNESS_FOUND, NO_WITNESS, COMPUTED)

EXIT_CODES = {
    VERIFIED: 0,
    WITNESS_FOUND: 0,
    COMPUTED: 0,
    COUNTEREXAMPLE: 1,
    NO_WITNESS: 3,
}
EXIT_USAGE = 2


def jsonable(obj: Any) -> Any:
    """Convert rationals to ``"num/den"`` strings and algebra elements to
    their printed form, recursively."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, SparseVector) or hasattr(obj, "laurent"):
        return str(obj)
    if hasattr(obj, "tensor_part"):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class CheckReport:
    command: str
    params: dict = field(default_factory=dict)
    verdict: str = VERIFIED
    witness: Any = None
    counterexample: Any = None
    max_ratio: Fraction | None = None
    payload: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict in (VERIFIED, WITNESS_FOUND, COMPUTED)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_dict(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {
            "command": self.command,
            "params": jsonable(self.params),
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.counterexample is not None:
            out["counterexample"] = jsonable(self.counterexample)
        if self.max_ratio is not None:
            out["max_ratio"] = format_rational(self.max_ratio)
        if self.payload:
            out["payload"] = jsonable(self.payload)
        out["runtime_ms"] = self.runtime_ms if timing else 0
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing))


def timed_check(fn):
    """Decorator stamping the wall-clock runtime onto a returned report."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.runtime_ms = int((time.perf_counter() - start) * 1000)
        return report

    return wrapper
