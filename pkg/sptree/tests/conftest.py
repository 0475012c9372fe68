"""
Shared fixtures: the shipped DIMACS instances.
"""

import pytest

from sptree.graph import build_graph
from sptree.static import bellman_ford
from sptree.tests.helpers import load


@pytest.fixture
def detour():
    return load('detour.gr')


@pytest.fixture
def detour_tree(detour):
    return bellman_ford(detour)


@pytest.fixture
def ring():
    return load('ring.gr')


@pytest.fixture
def zero_ring():
    return load('zero_ring.gr')


@pytest.fixture
def around_cycle():
    """
    s -> a -> b and s -> c -> d -> a, plus the non-tree edge (b, c).

    Dropping (b, c) to -8 closes a -> b -> c -> d -> a with length -1,
    found away from the updated edge's head.
    """
    return build_graph(5, 0, [(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1), (4, 1, 5), (2, 3, 5)])
