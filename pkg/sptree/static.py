"""
Static single-source shortest paths: FIFO Bellman-Ford with a negative-cycle
trap, and 0-cycle detection over zero-reduced-cost edges.
"""

from typing import Dict, List, Optional, Sequence, Union

import networkx as nx

from logcore import get_logger
from sptree.errors import PreconditionViolated
from sptree.graph import Graph, NegativeCycle, ShortestPathTree, checked_add, path_length

log = get_logger(__name__)


def bellman_ford(graph: Graph) -> Union[ShortestPathTree, NegativeCycle]:
    """
    Shortest-path tree from graph.source, or a negative-cycle witness.

    Vertices are relaxed in FIFO rounds; without a negative cycle every
    distance is final after n-1 rounds, so any relaxation in round n traps.
    """
    n = graph.vertex_count
    source = graph.source
    heads, weights, out_adj = graph.heads, graph.weights, graph.out_adj

    dist: List[Optional[int]] = [None] * n
    pred: List[Optional[int]] = [None] * n
    queued = [False] * n
    dist[source] = 0
    current = [source]

    for round_no in range(1, n + 1):
        upcoming = []
        for u in current:
            queued[u] = False
            du = dist[u]
            for eid in out_adj[u]:
                v = heads[eid]
                candidate = checked_add(du, weights[eid])
                if dist[v] is None or candidate < dist[v]:
                    dist[v] = candidate
                    pred[v] = u
                    if round_no == n:
                        witness = _predecessor_cycle(pred, v, n)
                        length = path_length(graph, witness)
                        log.debug("negative cycle trapped", extra={'context': {
                            'round': round_no, 'cycle_vertices': len(witness) - 1, 'length': length}})
                        return NegativeCycle(witness=witness, length=length)
                    if not queued[v]:
                        queued[v] = True
                        upcoming.append(v)
        if not upcoming:
            break
        current = upcoming

    return ShortestPathTree.from_parents(graph, pred)


def _predecessor_cycle(pred: Sequence[Optional[int]], start: int, n: int) -> List[int]:
    """Walk n predecessor steps to land on the cycle, then read it forwards."""
    v = start
    for _ in range(n):
        v = pred[v]
    cycle = [v]
    u = pred[v]
    while u != v:
        cycle.append(u)
        u = pred[u]
    cycle.append(v)
    cycle.reverse()
    return cycle


def detect_zero_cycle(
    graph: Graph,
    potentials: Optional[Sequence[int]] = None,
    overrides: Optional[Dict[int, int]] = None,
) -> Optional[List[int]]:
    """
    Return a cycle of total weight 0, or None.

    With feasible potentials f every reduced cost f(u) + w(u,v) - f(v) is
    non-negative, and a 0-cycle is exactly a cycle among the zero-reduced-cost
    edges. Without potentials, Bellman-Ford distances are used.

    overrides maps edge ids to weights used in place of the stored ones.

    Raises:
        PreconditionViolated: negative cycle, or infeasible potentials
    """
    weights = list(graph.weights)
    for eid, weight in (overrides or {}).items():
        weights[eid] = weight

    if potentials is None:
        reweighted = graph
        if overrides:
            reweighted = graph.copy()
            reweighted.weights = weights
        result = bellman_ford(reweighted)
        if isinstance(result, NegativeCycle):
            raise PreconditionViolated("graph has a negative cycle")
        potentials = result.dist

    tight = nx.DiGraph()
    for eid, (u, v) in enumerate(zip(graph.tails, graph.heads)):
        reduced = potentials[u] + weights[eid] - potentials[v]
        if reduced < 0:
            raise PreconditionViolated(f"potentials infeasible on edge ({u}, {v})")
        if reduced == 0:
            tight.add_edge(u, v)

    components = [c for c in nx.strongly_connected_components(tight) if len(c) > 1]
    if not components:
        return None
    component = min(components, key=min)
    start = min(component)
    edges = nx.find_cycle(tight.subgraph(component), source=start)
    cycle = [u for u, _ in edges]
    cycle.append(cycle[0])
    return cycle


def zero_cycle_status(graph: Graph, potentials: Optional[Sequence[int]] = None) -> Optional[List[int]]:
    """detect_zero_cycle with the verdict cached on the graph."""
    if not graph.zero_cycle_checked:
        graph.zero_cycle = detect_zero_cycle(graph, potentials)
        graph.zero_cycle_checked = True
        if graph.zero_cycle is not None:
            log.info("0-cycle found", extra={'context': {
                'cycle': [graph.name(v) for v in graph.zero_cycle]}})
    return graph.zero_cycle
