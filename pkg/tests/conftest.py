import numpy as np
import pytest

from unizk.group import FIXTURE, production_params


@pytest.fixture
def P():
    return FIXTURE


@pytest.fixture(scope="session")
def PROD():
    return production_params()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
