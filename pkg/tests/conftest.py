import pytest

from curvecomplex.curves import canon_curve
from curvecomplex.surface import build_surface


@pytest.fixture(scope="session")
def torus():
    return build_surface(1, 1)


@pytest.fixture(scope="session")
def sphere4():
    return build_surface(0, 4)


@pytest.fixture(scope="session")
def sphere5():
    return build_surface(0, 5)


@pytest.fixture(scope="session")
def torus2():
    return build_surface(1, 2)


def curve(surface, text):
    return canon_curve(surface, text)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
