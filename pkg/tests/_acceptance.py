"""Registry for the acceptance gate: one timed pass/fail line per criterion.

``criterion(...)`` times its body, enforces the runtime budget, and records a
line for the terminal summary.  A body that raises ``AssertionError`` records
FAIL; when ``xfail_reason`` is given and the failure message starts with the
``DOCUMENTED`` marker, the test is converted to an expected failure (used for
the two criteria that pin reference values refuted by exhaustive
enumeration — see tests/test_renorm.py for the verified corrections).
"""

from __future__ import annotations

import os
import time
from contextlib import contextmanager
from dataclasses import dataclass

import pytest

DOCUMENTED = "documented mismatch:"

QUICK = bool(os.environ.get("MATMODEL_ACCEPT_QUICK"))


@dataclass
class CriterionResult:
    number: int
    name: str
    status: str
    elapsed: float
    note: str


RESULTS: list[CriterionResult] = []


class _Recorder:
    def __init__(self) -> None:
        self.note = ""


@contextmanager
def criterion(number: int, name: str, budget: float, xfail_reason: str | None = None):
    recorder = _Recorder()
    start = time.perf_counter()
    try:
        yield recorder
    except AssertionError as err:
        elapsed = time.perf_counter() - start
        message = str(err).splitlines()[0] if str(err) else "assertion failed"
        documented = xfail_reason is not None and message.startswith(DOCUMENTED)
        RESULTS.append(
            CriterionResult(
                number,
                name,
                "XFAIL" if documented else "FAIL",
                elapsed,
                recorder.note or message,
            )
        )
        if documented:
            pytest.xfail(xfail_reason)
        raise
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        RESULTS.append(
            CriterionResult(
                number,
                name,
                "FAIL",
                elapsed,
                f"over budget ({elapsed:.2f}s > {budget:.0f}s); {recorder.note}",
            )
        )
        raise AssertionError(
            f"criterion {number} exceeded its runtime budget: "
            f"{elapsed:.2f}s > {budget:.0f}s"
        )
    RESULTS.append(CriterionResult(number, name, "PASS", elapsed, recorder.note))
