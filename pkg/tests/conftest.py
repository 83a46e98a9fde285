import os

import pytest
from hypothesis import HealthCheck, settings

from rangequery.core import LabeledTree

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

L1_LABELS = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]


def t1_tree() -> LabeledTree:
    """Seven nodes; 1-based edges 1-2, 1-3, 2-4, 2-5, 3-6, 6-7, here shifted to 0-based ids."""
    return LabeledTree([-1, 0, 0, 1, 1, 2, 5], [3, 1, 5, 5, 1, 5, 3])


@pytest.fixture
def l1():
    return list(L1_LABELS)


@pytest.fixture
def t1():
    return t1_tree()


def pytest_terminal_summary(terminalreporter):
    from tests._acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
