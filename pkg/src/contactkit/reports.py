"""Pass/fail reports with symbolic witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIP = "pass", "fail", "skip"


class InconsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    witness: str | None = None
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class AxiomReport:
    title: str
    checks: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list:
        return [c.name for c in self.checks]

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {"title": self.title, "checks": [c.to_dict() for c in self.checks],
               "passed": self.passed}
        if self.flags:
            out["hypothesis_flags"] = dict(sorted(self.flags.items()))
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def zero_check(name: str, cases) -> Check:
    """Pass iff every value in ``cases`` (pairs ``(label, value)``) is zero.

    The first nonzero value becomes the witness; the number of failing cases
    goes into ``detail``.
    """
    first = None
    bad = 0
    for label, value in cases:
        if not value.is_zero():
            bad += 1
            if first is None:
                first = f"{label}: {value}"
    if bad:
        return Check(name, FAIL, first, f"{bad} nonzero case(s)")
    return Check(name, PASS)


def bool_check(name: str, ok: bool, witness: str | None = None, detail: str | None = None) -> Check:
    return Check(name, PASS if ok else FAIL, None if ok else witness, detail)


def skip(name: str, reason: str) -> Check:
    return Check(name, SKIP, None, reason)


def all_zero(cases) -> bool:
    return all(v.is_zero() for _, v in cases)
