import sys
from fractions import Fraction as Fr

import numpy as np
import pytest

from tripatch.core import ControlNet, num_points

# listings copied from the source text, row-concatenation order
CUBIC_LISTING = [
    (0, 0, 0), (2, 0, 2), (4, 0, 2), (6, 0, 0),
    (1, 2, 2), (3, 2, 5), (5, 2, 2),
    (2, 4, 2), (4, 4, 2), (3, 6, 0),
]
MONKNET_LISTING = [
    (0, 0, 0), (0, Fr(1, 3), 0), (0, Fr(2, 3), 0), (0, 1, 0),
    (Fr(1, 3), 0, 0), (Fr(1, 3), Fr(1, 3), 0), (Fr(1, 3), Fr(2, 3), -1),
    (Fr(2, 3), 0, 0), (Fr(2, 3), Fr(1, 3), 0), (1, 0, 1),
]
# Enneper control points keyed by the polar arguments (r count, s count, t count)
ENNEPER_TABLE = {
    (3, 0, 0): (Fr(2, 3), 0, 1),
    (2, 0, 1): (Fr(2, 3), 0, Fr(1, 3)),
    (2, 1, 0): (Fr(2, 3), Fr(2, 3), Fr(1, 3)),
    (1, 0, 2): (Fr(1, 3), 0, 0),
    (1, 1, 1): (Fr(1, 3), Fr(1, 3), 0),
    (1, 2, 0): (Fr(2, 3), Fr(2, 3), Fr(-1, 3)),
    (0, 0, 3): (0, 0, 0),
    (0, 1, 2): (0, Fr(1, 3), 0),
    (0, 2, 1): (0, Fr(2, 3), Fr(-1, 3)),
    (0, 3, 0): (0, Fr(2, 3), -1),
}


@pytest.fixture
def cubic():
    return ControlNet(3, CUBIC_LISTING)


@pytest.fixture
def monknet():
    return ControlNet(3, MONKNET_LISTING)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def random_net(rng, degree, dim=3, scale=5.0):
    return ControlNet(degree, rng.uniform(-scale, scale, size=(num_points(degree), dim)))


def random_bary(rng, inside=True):
    if inside:
        return rng.dirichlet((1.0, 1.0, 1.0))
    w = rng.uniform(-1.0, 2.0, size=2)
    return np.array([w[0], w[1], 1.0 - w[0] - w[1]])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.LINES:
        terminalreporter.section("acceptance criteria")
        for line in module.LINES:
            terminalreporter.write_line(line)
