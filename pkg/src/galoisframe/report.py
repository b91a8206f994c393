"""Verdict records shared by every checker.

A :class:`Check` is one named boolean verdict with an optional witness
tuple; a :class:`Report` is an ordered collection of checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterator


class VerificationFailure(Exception):
    """Raised when a construction fails the property it is supposed to have."""

    def __init__(self, message: str, report: "Report | None" = None, witness: Any = None):
        super().__init__(message)
        self.report = report
        self.witness = witness


@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    count: int = 0
    detail: str = ""
    skipped: bool = False
    elapsed: float | None = None

    @property
    def verdict(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "fail"

    def to_dict(self, timings: bool = False) -> dict:
        out: dict[str, Any] = {"name": self.name, "verdict": self.verdict, "count": self.count}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        if timings and self.elapsed is not None:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            if prefix:
                c = Check(prefix + c.name, c.passed, c.witness, c.count, c.detail, c.skipped, c.elapsed)
            self.checks.append(c)

    def skip(self, name: str, detail: str = "") -> Check:
        return self.add(Check(name, True, detail=detail, skipped=True))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.skipped)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.skipped and not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "title": self.title,
            "verdict": "pass" if self.ok else "fail",
            "checks": [c.to_dict(timings) for c in self.checks],
        }

    def to_text(self, timings: bool = False) -> str:
        lines = [f"# {self.title}"] if self.title else []
        for c in self.checks:
            line = f"{c.verdict.upper():4} {c.name}"
            if c.count:
                line += f" count={c.count}"
            if c.witness is not None:
                line += f" witness={c.witness}"
            if c.detail:
                line += f" ({c.detail})"
            if timings and c.elapsed is not None:
                line += f" [{c.elapsed:.4f}s]"
            lines.append(line)
        return "\n".join(lines)


def first_failure(cases, predicate) -> tuple[bool, tuple | None, int]:
    """Scan ``cases`` in order; return (all passed, first failing case, count)."""
    n = 0
    for case in cases:
        n += 1
        if not predicate(*case):
            return False, tuple(case), n
    return True, None, n


def scan(name: str, cases, predicate, detail: str = "") -> Check:
    """Evaluate ``predicate`` over ``cases`` and wrap the outcome as a Check."""
    t0 = time.perf_counter()
    cases = list(cases)
    ok, witness, _ = first_failure(cases, predicate)
    return Check(name, ok, witness, len(cases), detail, elapsed=time.perf_counter() - t0)

