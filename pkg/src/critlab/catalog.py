"""Fixed labelled copies of the named graphs used throughout the package."""

from __future__ import annotations

from .graph import Graph

# T8 on u1..u8, stored as 0..7
T8_EDGES = [
    (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4),
    (2, 7), (3, 6), (4, 5), (5, 6), (5, 7), (6, 7),
]

# two diamonds {0,1,2,3} and {0,4,5,6} glued at 0, tips 3 and 6 joined
MOSER_EDGES = [
    (0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
    (0, 4), (0, 5), (4, 5), (4, 6), (5, 6),
    (3, 6),
]

# Mycielskian of C5: cycle 0..4, shadows 5..9, apex 10
GROTZSCH_EDGES = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(5 + i, (i + 1) % 5) for i in range(5)]
    + [(5 + i, (i - 1) % 5) for i in range(5)]
    + [(5 + i, 10) for i in range(5)]
)


def _wheel(rim: int) -> Graph:
    edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
    return Graph.from_edges(rim + 1, edges)


_BUILDERS = {
    "K3": lambda: Graph.complete(3),
    "K4": lambda: Graph.complete(4),
    "C5": lambda: Graph.cycle(5),
    "W5": lambda: _wheel(5),
    "MoserSpindle": lambda: Graph.from_edges(7, MOSER_EDGES),
    "T8": lambda: Graph.from_edges(8, T8_EDGES),
    "Grotzsch": lambda: Graph.from_edges(11, GROTZSCH_EDGES),
}

NAMES = tuple(_BUILDERS)


def catalog(name: str) -> Graph:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown named graph {name!r}; known: {', '.join(NAMES)}") from None


def wheel(rim: int) -> Graph:
    """Wheel with a ``rim``-cycle on ``0..rim-1`` and hub ``rim``."""
    return _wheel(rim)
