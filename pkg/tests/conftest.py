import functools

import pytest
from hypothesis import HealthCheck, settings

from craut.cr.model import builtin_model
from craut.lie.solve import solve_autcr

settings.register_profile(
    "craut", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("craut")

# lines collected by test_acceptance and printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@functools.lru_cache(maxsize=None)
def solved(name: str, stabilize: bool = False):
    return solve_autcr(builtin_model(name), stabilize=stabilize)


@pytest.fixture(scope="session")
def solve_cache():
    return solved


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
