"""
SPT maintenance after a single edge-weight decrease, with negative-cycle
detection.

A decrease can only shorten paths through the updated edge (x0, y0).
Starting from y0, vertices are settled in increasing order of their
(negative) shift; each extraction reparents a vertex and consolidates its
current subtree. A shortening that reaches an ancestor of x0 closes a
negative cycle through the updated edge; the cycle is rebuilt from tree
paths and returned as a witness.

Edges are examined only from consolidated vertices, each at most once.
"""

from typing import Dict, List, Optional, Set, Tuple

from logcore import get_logger
from sptree.errors import InvalidTree, MergeUnavailable, NotADecrease, UnchangedWeight, WeightOverflow
from sptree.graph import (
    Extraction,
    Graph,
    NegativeCycle,
    ShortestPathTree,
    Unchanged,
    UpdateOutcome,
    Updated,
    UpdateStats,
    UpdateTrace,
    WeightUpdate,
    checked_add,
    path_length,
    set_weight,
    validate_spt,
)
from sptree.minchange import (
    MergeState,
    apply_restorations,
    flush_merge_state,
    merge_hook_on_extract,
    open_merge_state,
    restore_linked,
)
from sptree.pqueue import EnqueueResult, QueueEntry, VertexQueue

log = get_logger(__name__)


def decrease_weight(
    graph: Graph,
    tree: ShortestPathTree,
    update: WeightUpdate,
    merge: bool = False,
    audit: bool = False,
) -> UpdateOutcome:
    """
    Apply a decrease of edge (x0, y0) and repair tree in place.

    The new weight is written to graph once the new distance of y0 is
    known. Returns Unchanged when the shorter edge does not improve y0,
    NegativeCycle when the new graph is inconsistent (tree restored to its
    input state), and Updated otherwise. On WeightOverflow graph and tree
    are left as they were.

    Raises:
        NotADecrease, UnchangedWeight, NoSuchEdge, WeightOverflow
    """
    x0, y0 = update.tail, update.head
    e0 = graph.edge_id(x0, y0)
    old_weight = graph.weights[e0]
    theta = update.new_weight - old_weight
    if theta == 0:
        raise UnchangedWeight(f"edge ({x0}, {y0}) already weighs {update.new_weight}")
    if theta > 0:
        raise NotADecrease(f"edge ({x0}, {y0}): {old_weight} -> {update.new_weight}")

    stats = UpdateStats()
    merge_state: Optional[MergeState] = None
    if merge:
        try:
            merge_state = open_merge_state(graph, tree.dist)
        except MergeUnavailable as e:
            stats.warnings.append(f"merge disabled: {e}")
            log.warning("merge disabled for this update", extra={'context': {
                'edge': [graph.name(x0), graph.name(y0)], 'reason': str(e)}})

    dist = tree.dist
    newdist = checked_add(dist[x0], update.new_weight)
    set_weight(graph, update)
    if newdist >= dist[y0]:
        return Unchanged(stats=stats)

    # ancestors of x0 in the input tree; their paths stay fixed until a cycle is found
    above_x0 = tree.ancestors(x0)
    guarded: Set[int] = set(above_x0)
    if y0 in guarded:
        witness = above_x0[:above_x0.index(y0) + 1][::-1] + [y0]
        return _negative_cycle(graph, witness, stats, UpdateTrace())

    heads, weights = graph.heads, graph.weights
    settled: Dict[int, int] = {}
    original_parent: Dict[int, Optional[int]] = {}
    queue = VertexQueue(monotone=audit)
    trace = UpdateTrace()
    examined = set() if audit else None
    undo_parent: List[Tuple[int, Optional[int], int]] = []
    undo_dist: List[Tuple[int, int]] = []

    def reattach(v: int, parent: int, weight: int) -> None:
        undo_parent.append((v, tree.parent[v], tree.parent_edge_weight[v]))
        tree.reattach(v, parent, weight)

    def rollback() -> None:
        for v, value in reversed(undo_dist):
            dist[v] = value
        for v, parent, weight in reversed(undo_parent):
            tree.reattach(v, parent, weight)

    queue.enqueue(QueueEntry(y0, x0, newdist - dist[y0], newdist, tree.depth[y0]))
    stats.enqueues = 1
    # y0 counts as strongly affected from the moment it is queued
    stats.strongly_affected = 1

    extracted: List[int] = []
    try:
        while queue:
            entry = queue.extract_min()
            yq, xq, delta = entry.vertex, entry.candidate_parent, entry.delta
            original_parent[yq] = tree.parent[yq]
            if merge_state is not None:
                restorations = merge_hook_on_extract(merge_state, entry, original_parent[yq], settled)
                for vertex, parent in restorations:
                    undo_parent.append((vertex, tree.parent[vertex], tree.parent_edge_weight[vertex]))
                apply_restorations(graph, tree, merge_state, restorations, (x0, y0), settled)

            reattach(yq, xq, weights[graph.edge_id(xq, yq)])
            members = tree.subtree(yq)
            for u in members:
                settled[u] = delta
                undo_dist.append((u, dist[u]))
                dist[u] = checked_add(dist[u], delta)
                if u != yq and queue.remove(u):
                    stats.removals += 1
            extracted.append(yq)
            if yq != y0:
                stats.strongly_affected += 1
            trace.extractions.append(Extraction(yq, xq, original_parent[yq], delta, members))

            for u in members:
                du = dist[u]
                for eid in graph.out_adj[u]:
                    y = heads[eid]
                    if y in settled:
                        continue
                    stats.edges_examined += 1
                    if examined is not None:
                        if eid in examined:
                            raise InvalidTree(y, f"edge {eid} examined twice")
                        examined.add(eid)
                        trace.examined.append(eid)
                    candidate = checked_add(du, weights[eid])
                    if candidate >= dist[y]:
                        continue
                    if y in guarded:
                        witness = _cycle_through(tree, above_x0, y, y0, u)
                        trace.affected = list(settled)
                        stats.extractions = len(extracted)
                        stats.affected = len(settled)
                        rollback()
                        return _negative_cycle(graph, witness, stats, trace)
                    entry = QueueEntry(y, u, candidate - dist[y], candidate, tree.depth[y])
                    if queue.enqueue(entry) is not EnqueueResult.IGNORED:
                        stats.enqueues += 1
    except WeightOverflow:
        rollback()
        set_weight(graph, WeightUpdate(x0, y0, old_weight))
        raise

    if merge_state is not None:
        apply_restorations(graph, tree, merge_state, flush_merge_state(merge_state, settled),
                           (x0, y0), settled)
        post = restore_linked(graph, tree, extracted, original_parent, (x0, y0), settled)
        stats.merges = merge_state.merges_done + post

    trace.affected = list(settled)
    stats.affected = len(settled)
    stats.extractions = len(extracted)
    stats.edge_changes = sum(1 for v in extracted if tree.parent[v] != original_parent[v])
    if original_parent[y0] == x0 and tree.parent[y0] == x0:
        stats.edge_changes += 1

    if audit:
        validate_spt(graph, tree)
        for step in trace.extractions:
            if not theta <= step.delta < 0:
                raise InvalidTree(step.vertex, f"shift {step.delta} outside [{theta}, 0)")

    log.debug("decrease applied", extra={'context': {
        'edge': [graph.name(x0), graph.name(y0)], 'theta': theta,
        'affected': stats.affected, 'extractions': stats.extractions,
        'edges_examined': stats.edges_examined, 'merges': stats.merges}})
    return Updated(tree=tree, stats=stats, trace=trace)


def _cycle_through(tree: ShortestPathTree, above_x0: List[int], y: int, y0: int, u: int) -> List[int]:
    """
    Tree path y .. x0, the updated edge, current tree path y0 .. u, then (u, y).
    """
    head = above_x0[:above_x0.index(y) + 1][::-1]
    tail = [u]
    while tail[-1] != y0:
        tail.append(tree.parent[tail[-1]])
    return head + tail[::-1] + [y]


def _negative_cycle(graph: Graph, witness: List[int], stats: UpdateStats, trace: UpdateTrace) -> NegativeCycle:
    length = path_length(graph, witness)
    if length >= 0:
        raise InvalidTree(witness[0], f"witness {witness} sums to {length}, not a negative cycle")
    log.info("negative cycle detected", extra={'context': {
        'cycle': [graph.name(v) for v in witness], 'length': length}})
    return NegativeCycle(witness=witness, length=length, stats=stats, trace=trace)
