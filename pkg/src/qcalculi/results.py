"""Verdict records shared by every bounded check."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Tuple

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    degree_bound: Optional[int] = None
    counterexample: Optional[Dict[str, Any]] = None
    elapsed_ms: int = 0
    cases: int = 0
    depends_on: Optional[str] = None
    detail: str = ""

    def __post_init__(self):
        if self.status == FAIL and self.counterexample is None:
            raise ValueError(f"failed check {self.name!r} needs a counterexample")
        if self.status == SKIPPED and not self.depends_on:
            raise ValueError(f"skipped check {self.name!r} must name its dependency")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self, with_timing: bool = False) -> Dict[str, Any]:
        out = {
            "name": self.name,
            "status": self.status,
            "degree_bound": self.degree_bound,
            "counterexample": self.counterexample,
            "cases": self.cases,
        }
        if self.depends_on:
            out["depends_on"] = self.depends_on
        if self.detail:
            out["detail"] = self.detail
        if with_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def __str__(self):
        line = f"{self.status.upper():7s} {self.name} (D={self.degree_bound}, {self.cases} cases)"
        if self.counterexample:
            line += f" counterexample={self.counterexample}"
        if self.depends_on:
            line += f" depends_on={self.depends_on}"
        return line


def skipped(name: str, dependency: str, degree_bound: Optional[int] = None) -> CheckResult:
    return CheckResult(name, SKIPPED, degree_bound, depends_on=dependency)


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, (list, dict, str, int, float, bool)) or value is None:
        return value
    return str(value)


def verify_cases(name: str, degree_bound: Optional[int],
                 cases: Iterable[Tuple[Dict[str, Any], Any, Any]]) -> CheckResult:
    """Compare ``lhs == rhs`` for each case; stop at the first mismatch.

    ``cases`` is consumed lazily, so the first counterexample in iteration
    order is the one reported.
    """
    start = time.perf_counter()
    count = 0
    for info, lhs, rhs in cases:
        count += 1
        if lhs != rhs:
            record = {k: _jsonable(v) for k, v in info.items()}
            record["lhs"] = str(lhs)
            record["rhs"] = str(rhs)
            return CheckResult(name, FAIL, degree_bound, record,
                               elapsed_ms=_ms(start), cases=count)
    return CheckResult(name, PASS, degree_bound, elapsed_ms=_ms(start), cases=count)


def combine(name: str, parts: Iterable[CheckResult], degree_bound=None) -> CheckResult:
    """Merge sub-verdicts: the first failing part wins."""
    start = time.perf_counter()
    total = 0
    elapsed = 0
    for part in parts:
        total += part.cases
        elapsed += part.elapsed_ms
        if part.status == FAIL:
            cx = dict(part.counterexample)
            cx.setdefault("part", part.name)
            return CheckResult(name, FAIL, degree_bound, cx,
                               elapsed_ms=elapsed + _ms(start), cases=total)
        if part.status == SKIPPED:
            return CheckResult(name, SKIPPED, degree_bound, depends_on=part.depends_on,
                               elapsed_ms=elapsed, cases=total)
    return CheckResult(name, PASS, degree_bound, elapsed_ms=elapsed + _ms(start), cases=total)


def _ms(start: float) -> int:
    return int(round((time.perf_counter() - start) * 1000))
