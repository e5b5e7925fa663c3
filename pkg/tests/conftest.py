import pytest
from hypothesis import settings

from tatekoszul.fixtures import e2_ring
from tatekoszul.ring import ring_create

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def E2():
    return e2_ring()


@pytest.fixture
def Q2():
    return ring_create({"char": 0, "vars": "x y"})


@pytest.fixture
def F101():
    return ring_create({"char": 101, "vars": "x y"})


@pytest.fixture
def F2():
    return ring_create({"char": 2, "vars": "x y"})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
