"""Pass/fail reporting primitives shared by the verification drivers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .series import Series


@dataclass(frozen=True)
class Check:
    """One verified identity: a name, a verdict, and a locating detail."""

    name: str
    passed: bool
    detail: str = ""

    def prefixed(self, prefix: str) -> "Check":
        return Check(f"{prefix}.{self.name}", self.passed, self.detail)


@dataclass(frozen=True)
class Report:
    """An ordered bundle of checks produced by one verification driver."""

    name: str
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def prefixed(self, prefix: str) -> "Report":
        return Report(self.name, tuple(c.prefixed(prefix) for c in self.checks))

    @staticmethod
    def merge(name: str, parts: Iterable["Report"]) -> "Report":
        checks: list[Check] = []
        for part in parts:
            checks.extend(part.checks)
        return Report(name, tuple(checks))


def check_series(name: str, got: Series, want: Series,
                 order: int | None = None) -> Check:
    """Exact coefficientwise comparison; the detail names the first bad exponent."""
    e = got.first_mismatch(want, order)
    if e is None:
        return Check(name, True)
    return Check(name, False,
                 f"mismatch at x^{e}: got {got.coeff(e)!r}, want {want.coeff(e)!r}")


def check_true(name: str, passed: bool, detail: str = "") -> Check:
    return Check(name, passed, "" if passed else detail)


def check_equal(name: str, got, want) -> Check:
    if got == want:
        return Check(name, True)
    return Check(name, False, f"got {got!r}, want {want!r}")
