import pytest
from hypothesis import HealthCheck, settings

from carlitz_euler.base_arith import parse_poly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")


def P(text: str, q: int = 2):
    """Shorthand for a polynomial in F_q[T]."""
    return parse_poly(text, q)


@pytest.fixture
def poly():
    return P


# one line per acceptance criterion, printed after the run
CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
