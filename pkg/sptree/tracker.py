"""
Session that owns one graph and its SPT across a stream of updates.
"""

import time
from typing import Optional

from logcore import get_logger
from sptree.decremental import decrease_weight
from sptree.errors import InconsistentGraph, UnchangedWeight
from sptree.graph import (
    Graph,
    NegativeCycle,
    ShortestPathTree,
    UpdateOutcome,
    WeightUpdate,
    validate_spt,
)
from sptree.incremental import increase_weight
from sptree.static import bellman_ford

log = get_logger(__name__)


def direction_of(graph: Graph, update: WeightUpdate) -> str:
    """'increase' or 'decrease' against the graph's current weight."""
    theta = update.new_weight - graph.weight(update.tail, update.head)
    if theta == 0:
        raise UnchangedWeight(
            f"edge ({update.tail}, {update.head}) already weighs {update.new_weight}"
        )
    return 'increase' if theta > 0 else 'decrease'


def apply_update(
    graph: Graph,
    tree: ShortestPathTree,
    update: WeightUpdate,
    merge: bool = False,
    audit: bool = False,
) -> UpdateOutcome:
    """Dispatch to the incremental or decremental algorithm by the sign of the change."""
    if direction_of(graph, update) == 'increase':
        return increase_weight(graph, tree, update, merge=merge, audit=audit)
    return decrease_weight(graph, tree, update, merge=merge, audit=audit)


class SptTracker:
    """Maintains an SPT of graph; refuses further updates once inconsistent."""

    def __init__(self, graph: Graph, tree: ShortestPathTree, merge: bool = False, audit: bool = False):
        self.graph = graph
        self.tree = tree
        self.merge = merge
        self.audit = audit
        self.consistent = True
        self.updates_applied = 0
        self.last_elapsed_ms: Optional[float] = None
        if audit:
            validate_spt(graph, tree)

    @classmethod
    def from_graph(cls, graph: Graph, merge: bool = False, audit: bool = False) -> 'SptTracker':
        """
        Build the initial tree with Bellman-Ford.

        Raises:
            InconsistentGraph: the graph already has a negative cycle
        """
        result = bellman_ford(graph)
        if isinstance(result, NegativeCycle):
            raise InconsistentGraph("initial graph has a negative cycle", result.witness)
        log.info("initial tree built", extra={'context': {
            'vertices': graph.vertex_count, 'edges': graph.edge_count}})
        return cls(graph, result, merge=merge, audit=audit)

    def apply(self, update: WeightUpdate) -> UpdateOutcome:
        if not self.consistent:
            raise InconsistentGraph("graph has a negative cycle; no further updates accepted")
        started = time.perf_counter()
        outcome = apply_update(self.graph, self.tree, update, merge=self.merge, audit=self.audit)
        self.last_elapsed_ms = (time.perf_counter() - started) * 1000.0
        self.updates_applied += 1
        if isinstance(outcome, NegativeCycle):
            self.consistent = False
        return outcome
