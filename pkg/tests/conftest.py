import json
from pathlib import Path

import numpy as np
import pytest

from weinstein import AlphaParam

ORACLES = json.loads((Path(__file__).parent / "oracles" / "values.json").read_text())
ALPHAS = (0.0, 0.5, 1.5)


@pytest.fixture(scope="session")
def oracle():
    return ORACLES


@pytest.fixture(params=ALPHAS, ids=lambda a: f"alpha={a:g}")
def param(request):
    return AlphaParam(request.param, 1)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
