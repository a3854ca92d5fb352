import pytest
from hypothesis import settings

from krlab.rootdata import CartanType, build_root_system

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SMALL_TYPES = ["A1", "A2", "A3", "B2", "C2", "C3", "B3", "D4", "G2"]


def R(name):
    return build_root_system(CartanType.parse(name))


@pytest.fixture(params=SMALL_TYPES)
def small_rs(request):
    return R(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
