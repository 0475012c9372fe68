"""
SPT maintenance after a single edge-weight increase.

Only the subtree below the updated edge can get longer. Its vertices are
settled in increasing order of their shift: each extraction reparents one
vertex under an already settled (or unaffected) vertex and consolidates its
whole current subtree with the same shift. Whatever is never reached this
way keeps its parent and moves by exactly theta.

Cost is bounded by the affected part of the graph: edges are only examined
when their head lies in the affected subtree, and each at most once.
"""

from typing import Dict, List, Optional, Tuple

from logcore import get_logger
from sptree.errors import InvalidTree, MergeUnavailable, NotAnIncrease, UnchangedWeight, WeightOverflow
from sptree.graph import (
    Extraction,
    Graph,
    ShortestPathTree,
    Unchanged,
    UpdateOutcome,
    Updated,
    UpdateStats,
    UpdateTrace,
    WeightUpdate,
    checked_add,
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


def increase_weight(
    graph: Graph,
    tree: ShortestPathTree,
    update: WeightUpdate,
    merge: bool = False,
    audit: bool = False,
) -> UpdateOutcome:
    """
    Apply an increase of edge (x0, y0) and repair tree in place.

    graph receives the new weight unless WeightOverflow is raised, which
    leaves graph and tree as they were. Returns Unchanged when the edge is
    not a tree edge, otherwise Updated carrying the same tree object.

    With merge=True, old parents are restored wherever possible so the
    result has minimal edge changes; on a graph with a 0-cycle merging is
    skipped and a warning is recorded in the stats. With audit=True the
    queue order, single edge examination and final SPT are checked.

    Raises:
        NotAnIncrease, UnchangedWeight, NoSuchEdge, WeightOverflow
    """
    x0, y0 = update.tail, update.head
    e0 = graph.edge_id(x0, y0)
    theta = update.new_weight - graph.weights[e0]
    if theta == 0:
        raise UnchangedWeight(f"edge ({x0}, {y0}) already weighs {update.new_weight}")
    if theta < 0:
        raise NotAnIncrease(f"edge ({x0}, {y0}): {graph.weights[e0]} -> {update.new_weight}")

    if tree.parent[y0] != x0:
        set_weight(graph, update)
        return Unchanged()

    stats = UpdateStats()
    merge_state: Optional[MergeState] = None
    if merge:
        try:
            merge_state = open_merge_state(graph, tree.dist)
        except MergeUnavailable as e:
            stats.warnings.append(f"merge disabled: {e}")
            log.warning("merge disabled for this update", extra={'context': {
                'edge': [graph.name(x0), graph.name(y0)], 'reason': str(e)}})

    heads, tails, weights = graph.heads, graph.tails, graph.weights
    dist = tree.dist
    affected = tree.subtree(y0)
    # new distances lie in [dist, dist + theta]
    for u in affected:
        checked_add(dist[u], theta)

    old_weight = set_weight(graph, update)
    tree.parent_edge_weight[y0] = update.new_weight
    original_parent: Dict[int, Optional[int]] = {}
    unsettled = set(affected)
    # shift of each consolidated vertex; dist[] holds new distances for these
    settled: Dict[int, int] = {}
    queue = VertexQueue(monotone=audit)
    trace = UpdateTrace(affected=affected)
    examined = set() if audit else None
    undo_parent: List[Tuple[int, Optional[int], int]] = []
    undo_dist: List[Tuple[int, int]] = []

    def examine(eid: int) -> None:
        stats.edges_examined += 1
        if examined is not None:
            if eid in examined:
                raise InvalidTree(heads[eid], f"edge {eid} examined twice")
            examined.add(eid)
            trace.examined.append(eid)

    def offer(y: int, x: int, candidate: int) -> None:
        entry = QueueEntry(y, x, candidate - dist[y], candidate, tree.depth[y])
        if queue.enqueue(entry) is not EnqueueResult.IGNORED:
            stats.enqueues += 1

    def rollback() -> None:
        for v, value in reversed(undo_dist):
            dist[v] = value
        for v, parent, weight in reversed(undo_parent):
            tree.reattach(v, parent, weight)
        tree.parent_edge_weight[y0] = old_weight
        set_weight(graph, WeightUpdate(x0, y0, old_weight))

    extracted: List[int] = []
    try:
        for y in affected:
            for eid in graph.in_adj[y]:
                x = tails[eid]
                if eid == e0 or x in unsettled:
                    continue
                examine(eid)
                candidate = checked_add(dist[x], weights[eid])
                if candidate - dist[y] < theta:
                    offer(y, x, candidate)

        while queue:
            entry = queue.extract_min()
            yq, xq, delta = entry.vertex, entry.candidate_parent, entry.delta
            original_parent[yq] = tree.parent[yq]
            if merge_state is not None:
                restorations = merge_hook_on_extract(merge_state, entry, original_parent[yq], settled)
                for vertex, _ in restorations:
                    undo_parent.append((vertex, tree.parent[vertex], tree.parent_edge_weight[vertex]))
                apply_restorations(graph, tree, merge_state, restorations, (x0, y0), settled)

            undo_parent.append((yq, tree.parent[yq], tree.parent_edge_weight[yq]))
            tree.reattach(yq, xq, graph.weights[graph.edge_id(xq, yq)])
            members = tree.subtree(yq)
            for u in members:
                settled[u] = delta
                unsettled.discard(u)
                undo_dist.append((u, dist[u]))
                dist[u] = checked_add(dist[u], delta)
                if u != yq and queue.remove(u):
                    stats.removals += 1
            extracted.append(yq)
            trace.extractions.append(Extraction(yq, xq, original_parent[yq], delta, members))

            for u in members:
                du = dist[u]
                for eid in graph.out_adj[u]:
                    y = heads[eid]
                    if y not in unsettled:
                        continue
                    examine(eid)
                    candidate = checked_add(du, weights[eid])
                    if candidate < dist[y] + theta:
                        offer(y, u, candidate)
    except WeightOverflow:
        rollback()
        raise

    # never reached: same parent, distance up by exactly theta
    for u in unsettled:
        settled[u] = theta
        dist[u] = checked_add(dist[u], theta)

    if merge_state is not None:
        apply_restorations(graph, tree, merge_state, flush_merge_state(merge_state, settled),
                           (x0, y0), settled)
        post = restore_linked(graph, tree, extracted, original_parent, (x0, y0), settled)
        stats.merges = merge_state.merges_done + post

    stats.affected = len(affected)
    stats.extractions = len(extracted)
    stats.strongly_affected = len(extracted)
    stats.edge_changes = sum(1 for v in extracted if tree.parent[v] != original_parent[v])
    if tree.parent[y0] == x0:
        stats.edge_changes += 1

    if audit:
        validate_spt(graph, tree)
        for step in trace.extractions:
            if not 0 <= step.delta < theta:
                raise InvalidTree(step.vertex, f"shift {step.delta} outside [0, {theta})")

    log.debug("increase applied", extra={'context': {
        'edge': [graph.name(x0), graph.name(y0)], 'theta': theta,
        'affected': stats.affected, 'extractions': stats.extractions,
        'edges_examined': stats.edges_examined, 'merges': stats.merges}})
    return Updated(tree=tree, stats=stats, trace=trace)
