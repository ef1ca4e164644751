import pytest
from hypothesis import HealthCheck, settings

from gcdsum.analytic import PrecisionContext

settings.register_profile(
    "gcdsum",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gcdsum")

# acceptance results collected for the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(40)


@pytest.fixture(scope="session")
def ctx60():
    return PrecisionContext(60)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
