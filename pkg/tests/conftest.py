import pytest

from netzero.pipeline import run_many
from netzero.scenario import FixedBudget

HEADLINE = ("fast", "medium", "slow", "plateau30")


@pytest.fixture(scope="session")
def runs4():
    """The four bundled headline scenarios, solved once per test session."""
    return run_many(list(HEADLINE))


@pytest.fixture(scope="session")
def fast_run(runs4):
    return runs4["fast"]


@pytest.fixture(scope="session")
def budget_runs():
    """fast and slow re-solved under a 167 Gt cumulative budget."""
    return run_many(["fast", "slow"], mode=FixedBudget(167.0))
