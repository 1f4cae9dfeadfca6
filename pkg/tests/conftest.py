from pathlib import Path

import numpy as np
import pytest

from orbitframes.goldens import read_golden

GOLDEN_DIR = Path(__file__).parent / "goldens"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def golden():
    def load(name):
        return read_golden(GOLDEN_DIR / f"{name}.csv")
    return load


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
