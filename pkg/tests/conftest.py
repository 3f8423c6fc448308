import numpy as np
import pytest
from hypothesis import HealthCheck, settings

DEFAULT_SEED = 20240601

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=80,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized suites (default %(default)s)")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return np.random.default_rng(seed)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
