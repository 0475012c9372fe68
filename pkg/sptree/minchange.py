"""
Minimal edge changes: branch analysis and merging of linked branches.

A branch is a component of the new tree once the updated edge and every tree
edge absent from the old tree are removed; its root is the miniroot. Two
branches are linked when an old-tree edge enters the miniroot of one from
the other. Restoring that old edge merges them, and on graphs without
0-cycles merging every linked pair with equal shift gives an SPT with the
fewest possible edge changes.

Inside the update loops, merge_hook_on_extract batches extracted vertices by
their shift and restores old parents once the shift class is complete; a
final restore_linked pass over the extracted vertices guarantees the result.
"""

from dataclasses import dataclass, field
from typing import Collection, Iterable, List, Mapping, Optional, Sequence, Tuple

from logcore import get_logger
from sptree.errors import ZeroCyclePresent
from sptree.graph import Graph, ShortestPathTree, WeightUpdate
from sptree.pqueue import QueueEntry
from sptree.static import detect_zero_cycle, zero_cycle_status

log = get_logger(__name__)

Restoration = Tuple[int, int]


@dataclass
class Branch:
    members: List[int]
    miniroot: int
    delta: int


@dataclass
class MergeState:
    """
    lam is the shift of the class being extracted; sigma holds the
    (vertex, original parent) pairs extracted with that shift.
    """

    lam: Optional[int] = None
    sigma: List[Tuple[int, Optional[int]]] = field(default_factory=list)
    merges_done: int = 0


def open_merge_state(graph: Graph, potentials: Sequence[int]) -> MergeState:
    """
    Start merging for one update on the pre-update graph.

    Raises:
        ZeroCyclePresent: the graph has a 0-cycle
    """
    cycle = zero_cycle_status(graph, potentials)
    if cycle is not None:
        raise ZeroCyclePresent(cycle)
    return MergeState()


def merge_hook_on_extract(
    state: MergeState,
    extracted: QueueEntry,
    original_parent: Optional[int],
    settled: Mapping[int, int],
) -> List[Restoration]:
    """
    Record an extraction; when its delta opens a new class, flush the old one.

    settled maps consolidated vertices to their shift (new minus old
    distance). A pair (y, p) in sigma is restored when p has settled with
    the class shift.
    """
    restorations: List[Restoration] = []
    if state.lam is None:
        state.lam = extracted.delta
    elif extracted.delta > state.lam:
        restorations = flush_merge_state(state, settled)
        state.lam = extracted.delta
    state.sigma.append((extracted.vertex, original_parent))
    return restorations


def flush_merge_state(state: MergeState, settled: Mapping[int, int]) -> List[Restoration]:
    """Emit restorations for the current class and empty sigma."""
    restorations = [
        (y, p) for y, p in state.sigma
        if p is not None and p in settled and settled[p] == state.lam
    ]
    state.sigma = []
    return restorations


def restore_parent(
    graph: Graph,
    tree: ShortestPathTree,
    vertex: int,
    parent: int,
    excluded: Tuple[int, int],
    within: Optional[Collection[int]] = None,
) -> bool:
    """
    Move vertex back under parent if the edge is tight and no cycle forms.

    The updated edge is never restored. The cycle walk climbs from parent and
    stops at the first vertex outside `within` (the whole chain when None).
    """
    if tree.parent[vertex] == parent or (parent, vertex) == excluded:
        return False
    eid = graph.edge_index.get((parent, vertex))
    if eid is None:
        return False
    weight = graph.weights[eid]
    if tree.dist[parent] + weight != tree.dist[vertex]:
        return False
    u: Optional[int] = parent
    while u is not None:
        if u == vertex:
            log.debug("restoration skipped, would close a cycle",
                      extra={'context': {'vertex': vertex, 'parent': parent}})
            return False
        if within is not None and u not in within:
            break
        u = tree.parent[u]
    tree.reattach(vertex, parent, weight)
    return True


def apply_restorations(
    graph: Graph,
    tree: ShortestPathTree,
    state: MergeState,
    restorations: Iterable[Restoration],
    excluded: Tuple[int, int],
    within: Optional[Collection[int]] = None,
) -> int:
    done = 0
    for vertex, parent in restorations:
        if restore_parent(graph, tree, vertex, parent, excluded, within):
            done += 1
    state.merges_done += done
    return done


def restore_linked(
    graph: Graph,
    tree: ShortestPathTree,
    candidates: Iterable[int],
    original_parent: Mapping[int, Optional[int]],
    excluded: Tuple[int, int],
    within: Optional[Collection[int]] = None,
) -> int:
    """
    Restore the old parent of every candidate whose old tree edge is tight.

    For an unchanged edge, tightness in the new graph is the same as parent
    and child sharing their shift, i.e. the two branches are linked with
    equal delta.
    """
    done = 0
    for vertex in candidates:
        parent = original_parent[vertex]
        if parent is None:
            continue
        if restore_parent(graph, tree, vertex, parent, excluded, within):
            done += 1
    return done


def _kept_edge(old_tree: ShortestPathTree, new_tree: ShortestPathTree, e0: WeightUpdate, v: int) -> bool:
    p = new_tree.parent[v]
    if p is None or p != old_tree.parent[v]:
        return False
    return not (p == e0.tail and v == e0.head)


def compute_branches(
    old_tree: ShortestPathTree,
    new_tree: ShortestPathTree,
    e0: WeightUpdate,
    graph_new: Graph,
) -> List[Branch]:
    """Branches of new_tree relative to old_tree, ordered by miniroot id."""
    branches = []
    for root in range(graph_new.vertex_count):
        if _kept_edge(old_tree, new_tree, e0, root):
            continue
        members = []
        stack = [root]
        while stack:
            u = stack.pop()
            members.append(u)
            stack.extend(c for c in new_tree.children[u] if _kept_edge(old_tree, new_tree, e0, c))
        branches.append(Branch(members, root, new_tree.dist[root] - old_tree.dist[root]))
    return branches


def linked_pairs(old_tree: ShortestPathTree, branches: Sequence[Branch]) -> List[Tuple[Branch, Branch]]:
    """(upper, lower) pairs joined by the old-tree edge into lower's miniroot."""
    owner = {}
    for branch in branches:
        for v in branch.members:
            owner[v] = branch
    pairs = []
    for branch in branches:
        p = old_tree.parent[branch.miniroot]
        if p is not None and owner[p] is not branch:
            pairs.append((owner[p], branch))
    return pairs


def merge_linked_branches(
    old_tree: ShortestPathTree,
    new_tree: ShortestPathTree,
    e0: WeightUpdate,
    graph_new: Graph,
    *,
    old_weight: Optional[int] = None,
) -> ShortestPathTree:
    """
    Return a copy of new_tree with every equal-delta linked pair merged.

    The new graph is checked for 0-cycles; when old_weight is given the
    pre-update graph is checked as well.

    Raises:
        ZeroCyclePresent
    """
    cycle = detect_zero_cycle(graph_new, new_tree.dist)
    if cycle is None and old_weight is not None:
        eid = graph_new.edge_id(e0.tail, e0.head)
        cycle = detect_zero_cycle(graph_new, old_tree.dist, overrides={eid: old_weight})
    if cycle is not None:
        raise ZeroCyclePresent(cycle)

    merged = new_tree.clone()
    candidates = [
        v for v in range(graph_new.vertex_count)
        if merged.parent[v] is not None and merged.parent[v] != old_tree.parent[v]
    ]
    restored = restore_linked(graph_new, merged, candidates, old_tree.parent, (e0.tail, e0.head))
    log.debug("linked branches merged", extra={'context': {
        'candidates': len(candidates), 'restored': restored}})
    return merged
