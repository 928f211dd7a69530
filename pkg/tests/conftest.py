from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# numerators and denominators in the same ranges the seeded generator uses
rationals = st.builds(Fraction, st.integers(-10**4, 10**4), st.integers(1, 10**3))
nonzero_rationals = rationals.filter(lambda x: x != 0)
taus = nonzero_rationals.filter(lambda x: x not in (1, -1))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(number: int, passed: bool, text: str):
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
