from fractions import Fraction

import pytest

from quiverorders.mckay import abelian_skew_relations
from quiverorders.paths import Representation
from quiverorders.quiver_core import make_setting
from quiverorders.stability import SemiInvariantScheme


@pytest.fixture
def conifold():
    return make_setting([1, 1], [(0, 1, 2), (1, 0, 2)])


@pytest.fixture
def triangle():
    """The Z3 McKay triangle as a bare setting."""
    return make_setting([1, 1, 1], [(0, 1, 1), (1, 2, 1), (2, 0, 1), (1, 0, 1), (2, 1, 1), (0, 2, 1)])


@pytest.fixture
def z3():
    return abelian_skew_relations([1, 2], 3)


@pytest.fixture
def z3_scheme(z3):
    return SemiInvariantScheme.from_strings(z3.quiver, (-2, 1, 1), [["x1", "0"], ["y3", "y3"]])


def thin_rep(quiver, **values):
    return Representation(quiver, {k: [[Fraction(v)]] for k, v in values.items()})


@pytest.fixture
def make_thin():
    return thin_rep


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
