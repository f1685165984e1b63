import json
import sys
import random

import pytest

from flexenc.curves import HessianCurve, WeierstrassCurve
from flexenc.field import make_field


@pytest.fixture
def F11():
    return make_field(11)


@pytest.fixture
def w11(F11):
    return WeierstrassCurve(F11, 1, 3)


@pytest.fixture
def h11(F11):
    return HessianCurve(F11, 2)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return write


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
