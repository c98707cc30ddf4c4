import pytest

from jsjtree.graph import Graph


def theta_graph() -> Graph:
    # poles 0 and 1, three arcs through 2, 3, 4
    return Graph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def c6_chord() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])


def bowtie() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def triangle_with_pendants() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])


@pytest.fixture
def theta():
    return theta_graph()


@pytest.fixture
def chorded():
    return c6_chord()


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
