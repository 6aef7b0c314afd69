from __future__ import annotations

import pytest
from hypothesis import settings

from matmodel.correlators import CorrelatorEngine
from matmodel.freeenergy import assemble
from matmodel.renorm import build_frame

settings.register_profile("fixed-seed", derandomize=True, max_examples=60)
settings.load_profile("fixed-seed")


@pytest.fixture(scope="session")
def engine() -> CorrelatorEngine:
    return CorrelatorEngine()


@pytest.fixture(scope="session")
def free_energy_8(engine):
    return assemble(8, engine)


@pytest.fixture(scope="session")
def free_energy_10(engine):
    return assemble(10, engine)


@pytest.fixture(scope="session")
def frame_10():
    return build_frame(10)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from _acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for result in sorted(RESULTS, key=lambda r: r.number):
        line = (
            f"criterion {result.number:02d}  {result.name:<34}"
            f"{result.status:<6}{result.elapsed:7.2f}s"
        )
        if result.note:
            line += f"  {result.note}"
        terminalreporter.write_line(line)
