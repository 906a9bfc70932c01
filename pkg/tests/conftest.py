import numpy as np
import pytest

from projspec.arrangement import braid_tuple
from projspec.fixtures import plane_quadric_tuple, named_fixtures


def matrix_fixtures() -> dict:
    return named_fixtures()


@pytest.fixture
def plane_quadric():
    return plane_quadric_tuple()


@pytest.fixture
def braid():
    return braid_tuple()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 11):
        if number in module.RESULTS:
            ok, detail = module.RESULTS[number]
            terminalreporter.write_line(f"AC{number:02d} {'PASS' if ok else 'FAIL'}: {detail}")
        else:
            terminalreporter.write_line(f"AC{number:02d} FAIL: did not run to completion")
