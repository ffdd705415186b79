import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

MERSENNE61 = (1 << 61) - 1
P50 = (1 << 50) - 27


@pytest.fixture
def rng():
    return random.Random(12345)


# acceptance criteria report one line each; the lines are repeated at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
