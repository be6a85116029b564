from fractions import Fraction

import pytest
from hypothesis import strategies as st


def value_rtl(terms):
    """Right-to-left evaluation in projective coordinates; None when undefined.

    Independent of the matrix product used by the library.
    """
    terms = list(terms)
    if not terms:
        return None
    num, den = terms[-1], 1
    for a in reversed(terms[:-1]):
        # a + 1/(num/den) = (a*num + den) / num
        num, den = a * num + den, num
    if den == 0:
        return None
    return Fraction(num, den)


def words(min_size=1, max_size=12, max_term=9, min_term=1):
    return st.lists(st.integers(min_term, max_term), min_size=min_size, max_size=max_size).map(tuple)


@pytest.fixture
def rtl():
    return value_rtl


# acceptance reporting --------------------------------------------------------

import time

ACCEPTANCE_LINES: list = []
SESSION = {"start": time.monotonic()}


def pytest_sessionstart(session):
    SESSION["start"] = time.monotonic()


def pytest_collection_modifyitems(items):
    # acceptance criteria run last so the runtime criterion sees the whole suite
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
