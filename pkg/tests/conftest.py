import pytest
from hypothesis import strategies as st

from goeritz.homology import HomologyVector
from goeritz.words import GoeritzWord

BOUND = 2**31

coords = st.integers(min_value=-BOUND, max_value=BOUND - 1)
small = st.integers(min_value=-50, max_value=50)
vectors = st.builds(HomologyVector, coords, coords, coords, coords)
small_vectors = st.builds(HomologyVector, small, small, small, small)

LETTERS = [("alpha", 1), ("beta", 1), ("beta", -1), ("gamma", 1), ("delta", 1), ("delta", -1), ("epsilon", 1)]


def words(max_size=12, epsilon=True):
    pool = LETTERS if epsilon else LETTERS[:-1]
    return st.lists(st.sampled_from(pool), max_size=max_size).map(lambda ls: GoeritzWord(tuple(ls)))


# acceptance tests register their one-line summaries here
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
