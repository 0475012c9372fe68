"""
Brute-force ground truth for small instances: recomputation from scratch,
enumeration of every SPT, and the minimum number of edge changes.
"""

import itertools
from typing import Iterator, List, Optional, Sequence, Union

from sptree.errors import CapExceeded, InconsistentGraph
from sptree.graph import (
    Graph,
    NegativeCycle,
    ShortestPathTree,
    WeightUpdate,
    count_edge_changes,
)
from sptree.static import bellman_ford

DEFAULT_CAP = 200_000


def recompute(graph: Graph) -> Union[ShortestPathTree, NegativeCycle]:
    """Shortest-path tree from scratch (Bellman-Ford)."""
    return bellman_ford(graph)


def tight_parents(graph: Graph, dist: Sequence[int]) -> List[List[int]]:
    """For each vertex, every in-neighbour p with dist(p) + w(p, v) = dist(v)."""
    choices: List[List[int]] = [[] for _ in range(graph.vertex_count)]
    for u, v, w in graph.arcs():
        if v != graph.source and dist[u] + w == dist[v]:
            choices[v].append(u)
    return choices


def _assignments(graph: Graph, cap: int) -> Iterator[List[Optional[int]]]:
    result = recompute(graph)
    if isinstance(result, NegativeCycle):
        raise InconsistentGraph("cannot enumerate SPTs of an inconsistent graph", result.witness)
    choices = tight_parents(graph, result.dist)
    choices[graph.source] = [None]

    size = 1
    for options in choices:
        size *= len(options)
    if size > cap:
        raise CapExceeded(size, cap)

    for parents in itertools.product(*choices):
        if _acyclic(parents, graph.source):
            yield list(parents)


def _acyclic(parents: Sequence[Optional[int]], source: int) -> bool:
    """Every parent chain reaches the source (tight choices may close 0-cycles)."""
    state = [0] * len(parents)  # 0 unseen, 1 on current walk, 2 reaches source
    state[source] = 2
    for start in range(len(parents)):
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = parents[v]
        if state[v] == 1:
            return False
        for u in walk:
            state[u] = 2
    return True


def enumerate_spts(graph: Graph, cap: int = DEFAULT_CAP) -> List[ShortestPathTree]:
    """
    All shortest-path trees of graph.

    Raises:
        CapExceeded: product of per-vertex tight-parent counts exceeds cap
        InconsistentGraph: negative cycle
    """
    return [ShortestPathTree.from_parents(graph, parents) for parents in _assignments(graph, cap)]


def min_edge_changes(
    graph_new: Graph,
    old_tree: ShortestPathTree,
    e0: WeightUpdate,
    cap: int = DEFAULT_CAP,
) -> int:
    """Fewest edge changes to old_tree over every SPT of graph_new."""
    best: Optional[int] = None
    for parents in _assignments(graph_new, cap):
        changes = sum(1 for a, b in zip(old_tree.parent, parents) if a != b)
        if old_tree.parent[e0.head] == e0.tail and parents[e0.head] == e0.tail:
            changes += 1
        if best is None or changes < best:
            best = changes
    # the Bellman-Ford tree is always among the assignments
    assert best is not None
    return best


def best_tree(
    graph_new: Graph,
    old_tree: ShortestPathTree,
    e0: WeightUpdate,
    cap: int = DEFAULT_CAP,
) -> ShortestPathTree:
    """One SPT of graph_new attaining min_edge_changes."""
    trees = enumerate_spts(graph_new, cap)
    return min(trees, key=lambda t: count_edge_changes(old_tree, t, e0))
