"""Shared fixtures; every Gröbner basis built during the run is re-checked."""

import pytest
from hypothesis import HealthCheck, settings

from closurekit import groebner

settings.register_profile("ck", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ck")

GB_AUDIT = {"checked": 0, "failed": 0}


def _audit(gb):
    GB_AUDIT["checked"] += 1
    if not groebner.buchberger_criterion(gb):
        GB_AUDIT["failed"] += 1
        raise AssertionError(f"basis fails the Buchberger criterion: {gb.gens}")


groebner.set_check_hook(_audit)


@pytest.fixture
def gb_audit():
    return GB_AUDIT


ACCEPTANCE = []


def record(number: int, title: str, ok: bool, detail: str = ""):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"Gröbner bases re-checked with the Buchberger criterion: {GB_AUDIT['checked']}, "
        f"failures: {GB_AUDIT['failed']}")
