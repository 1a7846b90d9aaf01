import pytest
from hypothesis import HealthCheck, settings

from normlab import Lp, INF, example31_space, prism_space, regular_polygon_space
from normlab.oracle import random_polygon

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def square():
    return Lp(INF, 2)


@pytest.fixture
def hexagon():
    return regular_polygon_space(3)


@pytest.fixture(scope="session")
def polygon_zoo():
    """A spread of planar polytopal spaces used by several property tests."""
    regular = [regular_polygon_space(n).space for n in (2, 3, 4, 5, 8)]
    odd = [example31_space(d) for d in (0.1, 1.0, 10.0)]
    rnd = [random_polygon(s, m) for s, m in ((1, 2), (2, 3), (3, 5), (4, 8))]
    return regular + odd + rnd


@pytest.fixture(scope="session")
def prism():
    return prism_space(3)



def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
