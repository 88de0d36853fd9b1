import pytest

from schema import RunConfig


@pytest.fixture
def fast_config():
    """A small scheme for corpora; the examples use the defaults."""
    return RunConfig.from_settings(levels=12, directions=8, witness_window=4, dependence_start=4)


@pytest.fixture
def rank_drop(program_from):
    """h = x1 + x2^2 with (x1, x2) complementary: RCPLD fails at the origin."""
    return program_from(
        """
        vars = ["x1", "x2"]
        h = ["x1 + x2^2"]

        [[blocks]]
        map = ["x1", "x2"]
        set = "omega_E"
        """
    )


@pytest.fixture
def folded(program_from):
    """(x, -x) complementary: an abnormal multiplier exists at 0."""
    return program_from(
        """
        vars = ["x"]

        [[blocks]]
        map = ["x", "-x"]
        set = "omega_E"
        """
    )
