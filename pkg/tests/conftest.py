"""Shared systems and graphs used across the test modules."""

from fractions import Fraction

import pytest

from wrzero.config import get_settings
from wrzero.model.graph import WeightedEGraph
from wrzero.model.parser import parse_system

# Three monomials x1, x2^2, x3^2 on one triangle of edges
TRIANGLE_TEXT = """
dx1/dt = -12*x1 + x3^2
dx2/dt = 14*x1 - 4*x2^2 + 8*x3^2
dx3/dt = 10*x1 + 4*x2^2 - 10*x3^2
"""

# Same monomials; w1 lies outside the cone of its component
NOT_IN_CONE_TEXT = """
dx1/dt = -1/2*x1 + x3^2
dx2/dt = -2*x1 - 4*x2^2 + 8*x3^2
dx3/dt = 3*x1 + 4*x2^2 - 10*x3^2
"""

# Square of monomials 1, x1^2, x2^2, x1^2*x2^2
SQUARE_TEXT = """
dx1/dt = 6 - 10*x1^2 + 6*x2^2 - 4*x1^2*x2^2
dx2/dt = 6 + 10*x1^2 - 6*x2^2 - 4*x1^2*x2^2
"""

LINEAR_TEXT = "dx1/dt = 1 - x1"

INCONSISTENT_TEXT = "dx1/dt = 1 + x1"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Settings are cached per process; every test starts from the defaults."""
    for name in ("WRZERO_SEED", "WRZERO_T_END", "WRZERO_OUTPUT_FORMAT", "WRZERO_REL_TOL"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def triangle_system():
    return parse_system(TRIANGLE_TEXT)


@pytest.fixture
def not_in_cone_system():
    return parse_system(NOT_IN_CONE_TEXT)


@pytest.fixture
def square_system():
    return parse_system(SQUARE_TEXT)


@pytest.fixture
def linear_system():
    return parse_system(LINEAR_TEXT)


def triangle_graph() -> WeightedEGraph:
    y1, y2, y3 = (1, 0, 0), (0, 2, 0), (0, 0, 2)
    return WeightedEGraph.from_edges(
        [(y1, y2, 7), (y1, y3, 5), (y2, y3, 2), (y3, y1, 1), (y3, y2, 4)]
    )


def square_two_pairs() -> WeightedEGraph:
    """Two reversible pairs: the diagonal and the anti-diagonal of the square."""
    return WeightedEGraph.from_edges(
        [
            ((0, 0), (2, 2), 3),
            ((2, 2), (0, 0), 2),
            ((0, 2), (2, 0), 3),
            ((2, 0), (0, 2), 5),
        ]
    )


def square_one_component() -> WeightedEGraph:
    """Same dynamics as square_two_pairs on one connected component of deficiency one."""
    return WeightedEGraph.from_edges(
        [
            ((0, 0), (2, 0), 3),
            ((2, 0), (0, 0), 5),
            ((0, 2), (2, 2), 3),
            ((2, 2), (0, 2), 1),
            ((0, 0), (0, 2), 3),
            ((0, 2), (0, 0), 3),
            ((2, 0), (2, 2), 5),
            ((2, 2), (2, 0), 1),
            ((2, 2), (0, 0), 1),
        ]
    )


def square_into_center() -> WeightedEGraph:
    """Every corner of the square flows into (1, 1)."""
    return WeightedEGraph.from_edges(
        [
            ((0, 0), (1, 1), 6),
            ((2, 0), (1, 1), 10),
            ((0, 2), (1, 1), 6),
            ((2, 2), (1, 1), 4),
        ]
    )


# Eight vertices, two connected components, three terminal strongly connected components
THREE_TERMINAL_VERTICES = {
    "y1": (0, 2),
    "y2": (2, 3),
    "y3": (4, 0),
    "y4": (4, 2),
    "y5": (0, 0),
    "y6": (1, 0),
    "y7": (2, 1),
    "y8": (3, 1),
}


def three_terminal_graph() -> WeightedEGraph:
    y = THREE_TERMINAL_VERTICES
    pairs = [
        ("y1", "y2"), ("y2", "y1"),
        ("y3", "y4"), ("y4", "y3"),
        ("y5", "y6"), ("y6", "y7"), ("y7", "y5"),
        ("y8", "y7"), ("y8", "y4"),
    ]
    return WeightedEGraph.from_edges((y[a], y[b], Fraction(k + 1, 2)) for k, (a, b) in enumerate(pairs))


@pytest.fixture
def write_input(tmp_path):
    """Write text to a file under tmp_path and return its path as a string."""

    def _write(text: str, name: str = "system.txt") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
