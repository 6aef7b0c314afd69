"""Shared reporting types for internal consistency checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["VerificationError", "VerificationReport", "compare_values"]


class VerificationError(AssertionError):
    """An exact identity that must hold failed to hold."""


@dataclass
class VerificationReport:
    """Outcome of one named verification: what was checked and any mismatches."""

    check: str
    ok: bool = True
    details: list[str] = field(default_factory=list)
    checked: int = 0

    def record(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            self.ok = False
            self.details.append(message)

    def merge(self, other: "VerificationReport") -> None:
        self.checked += other.checked
        if not other.ok:
            self.ok = False
            self.details.extend(f"{other.check}: {m}" for m in other.details)

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "ok": self.ok,
            "checked": self.checked,
            "details": list(self.details),
        }

    def raise_if_failed(self) -> "VerificationReport":
        if not self.ok:
            raise VerificationError(
                f"{self.check}: {len(self.details)} mismatch(es); first: "
                f"{self.details[0]}"
            )
        return self


def compare_values(
    report: VerificationReport, label: str, actual: Any, expected: Any
) -> None:
    """Record an exact equality check with a readable mismatch message."""
    equal = actual == expected
    report.record(bool(equal), f"{label}: got {actual}, expected {expected}")
