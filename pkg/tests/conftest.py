import random

import pytest

DEFAULT_SEED = 20240607


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized property tests")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:>2}: {title} ({seconds:.2f} s){detail}")
