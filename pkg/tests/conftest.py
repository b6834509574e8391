import numpy as np
import pytest

from coneangles.cone import cone_from_generators, cone_from_halfspaces, subspace

R2 = 1.0 / np.sqrt(2.0)


@pytest.fixture
def quadrant_pair():
    """K1 = R^2_+ and K2 = {x : -x1 >= x2}."""
    k1 = cone_from_generators([[1, 0], [0, 1]], dim=2)
    k2 = cone_from_generators([[1, -1], [-1, 1], [-1, -1]], dim=2)
    return k1, k2


@pytest.fixture
def line_pair():
    return subspace([[1, 0]]), subspace([[1, 1]])


@pytest.fixture
def km_pair():
    """K = {x2 >= x1 >= 0} and the horizontal axis M."""
    k = cone_from_halfspaces([[-1, 0], [1, -1]], dim=2)
    m = subspace([[1, 0]])
    return k, m


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
