from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from critlab.enumerate import enumerate_graphs  # noqa: E402
from critlab.graph import Graph  # noqa: E402
from critlab.verify import critical_graphs, family_index  # noqa: E402


def pytest_configure(config):
    # keep family generation hermetic unless the caller explicitly points at a cache
    os.environ.setdefault("CRITLAB_CACHE", "")


@pytest.fixture(scope="session")
def ore4():
    return family_index("4ore", 13)


@pytest.fixture(scope="session")
def classb():
    return family_index("classb", 14)


@pytest.fixture(scope="session")
def ore5():
    return family_index("kore", 9, 5)


@pytest.fixture(scope="session")
def small_graphs() -> dict[int, list[Graph]]:
    """Every graph on up to 7 vertices, one per isomorphism class."""
    return {n: list(enumerate_graphs(n)) for n in range(1, 8)}


@pytest.fixture(scope="session")
def graphs8() -> list[Graph]:
    return list(enumerate_graphs(8))


@pytest.fixture(scope="session")
def critical_by_order() -> dict[int, list[Graph]]:
    return {n: critical_graphs(n) for n in range(4, 9)}
