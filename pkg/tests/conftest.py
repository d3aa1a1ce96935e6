import functools

import pytest
from hypothesis import strategies as st

from bsgeodesic.oracle import build_ball
from bsgeodesic.words import Letter

LETTERS = list(Letter)


def words(max_size=30, weights=None):
    return st.lists(st.sampled_from(LETTERS), max_size=max_size).map(tuple)


@functools.lru_cache(maxsize=None)
def ball(p, radius):
    """Balls are immutable, so one per (p, radius) is shared by all tests."""
    return build_ball(p, radius)


@pytest.fixture
def get_ball():
    return ball


# criterion number -> one-line verdict, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
