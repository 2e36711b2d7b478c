import sys

import pytest

from episodary import Episode

E = Episode.from_nodes


# Small toy episodes; nodes a, b, c, d are 0..3.
TOY = {
    "G1": E([["a"], ["b"], ["c"], ["d"]], proper=[(0, 3)]),
    "G2": E([["a"], ["b"], ["c"], ["d"]], proper=[(0, 3), (0, 2), (2, 3), (1, 3)], weak=[(0, 1)]),
    "G3": E([["a"], ["b"], ["c", "d"]], proper=[(0, 2), (1, 2)], weak=[(0, 1)]),
    "H1": E([["a"], ["a"], ["b"], ["b"]], proper=[(0, 2), (1, 3)]),
    "H2": E([["a"], ["a"], ["b"], ["b"]], proper=[(0, 2), (1, 3)], weak=[(1, 2), (0, 3)]),
}

_CLOSURES_BASE = [(0, 3), (0, 2), (0, 1), (2, 3), (1, 3)]
CLOSURES = {
    "G1": E([["a"], ["b"], ["c"], ["d"]], proper=[(0, 3)]),
    "G2": E([["a"], ["b"], ["c"], ["d"]], proper=_CLOSURES_BASE),
    "G3": E([["a"], ["b"], ["c"], ["d"]], proper=_CLOSURES_BASE + [(1, 2)]),
    "G4": E([["a"], ["b"], ["c"], ["d"]], proper=_CLOSURES_BASE + [(2, 1)]),
}

# Host for tail tests; its weak edge a->d is promoted by transitive closure.
TAIL_HOST = E([["a"], ["b"], ["c"], ["d"]], proper=[(0, 2), (1, 3)], weak=[(0, 1), (0, 3)])


@pytest.fixture
def toy():
    return dict(TOY)


@pytest.fixture
def closures():
    return dict(CLOSURES)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
