"""
Graph-core: weighted digraph, shortest-path tree, and the update vocabulary
shared by the static and dynamic algorithms.

Vertex ids are dense 0-based integers internally. Weights and distances are
Python ints kept inside the signed 64-bit range by checked_add.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sptree.errors import (
    BrokenPath,
    DuplicateEdge,
    IdOutOfRange,
    InvalidTree,
    NoSuchEdge,
    SelfLoop,
    UnreachableVertex,
    WeightOverflow,
)

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

Arc = Tuple[int, int, int]


def checked_add(a: int, b: int) -> int:
    """a + b, raising WeightOverflow outside the signed 64-bit range."""
    total = a + b
    if total < INT64_MIN or total > INT64_MAX:
        raise WeightOverflow(f"{a} + {b} leaves the 64-bit range")
    return total


class Graph:
    """
    Directed graph with at most one edge per ordered pair.

    Edges are addressed by id (position in tails/heads/weights) and by
    endpoint pair through edge_index. out_adj and in_adj hold edge ids.
    """

    def __init__(self, vertex_count: int, source: int, arcs: Sequence[Arc]):
        self.vertex_count = vertex_count
        self.source = source
        self.tails: List[int] = []
        self.heads: List[int] = []
        self.weights: List[int] = []
        self.out_adj: List[List[int]] = [[] for _ in range(vertex_count)]
        self.in_adj: List[List[int]] = [[] for _ in range(vertex_count)]
        self.edge_index: Dict[Tuple[int, int], int] = {}
        self.labels: Dict[int, str] = {}
        # Feasible potentials recorded by the generator; never read by the algorithms
        self.potentials: Optional[List[int]] = None
        # Cached 0-cycle verdict, see static.zero_cycle_status
        self.zero_cycle_checked = False
        self.zero_cycle: Optional[List[int]] = None

        for tail, head, weight in arcs:
            self._add(tail, head, weight)

    def _add(self, tail: int, head: int, weight: int) -> None:
        for vertex in (tail, head):
            if not 0 <= vertex < self.vertex_count:
                raise IdOutOfRange(vertex, self.vertex_count)
        if tail == head:
            raise SelfLoop(tail)
        if (tail, head) in self.edge_index:
            raise DuplicateEdge(tail, head)
        if not INT64_MIN <= weight <= INT64_MAX:
            raise WeightOverflow(f"weight {weight} on ({tail}, {head})")
        eid = len(self.tails)
        self.tails.append(tail)
        self.heads.append(head)
        self.weights.append(weight)
        self.out_adj[tail].append(eid)
        self.in_adj[head].append(eid)
        self.edge_index[(tail, head)] = eid

    @property
    def edge_count(self) -> int:
        return len(self.tails)

    def edge_id(self, tail: int, head: int) -> int:
        try:
            return self.edge_index[(tail, head)]
        except KeyError:
            raise NoSuchEdge(tail, head) from None

    def has_edge(self, tail: int, head: int) -> bool:
        return (tail, head) in self.edge_index

    def weight(self, tail: int, head: int) -> int:
        return self.weights[self.edge_id(tail, head)]

    def arcs(self) -> Iterator[Arc]:
        return zip(self.tails, self.heads, self.weights)

    def name(self, vertex: int) -> str:
        """Display name: the `c name` label if any, else the 1-based id."""
        return self.labels.get(vertex, str(vertex + 1))

    def copy(self) -> 'Graph':
        clone = Graph(self.vertex_count, self.source, list(self.arcs()))
        clone.labels = dict(self.labels)
        clone.potentials = list(self.potentials) if self.potentials is not None else None
        clone.zero_cycle_checked = self.zero_cycle_checked
        clone.zero_cycle = list(self.zero_cycle) if self.zero_cycle is not None else None
        return clone


@dataclass
class ShortestPathTree:
    """
    Spanning tree rooted at source with per-vertex distances.

    children is kept as the exact inverse of parent and depth is kept
    current, so subtree() costs O(output).
    """

    source: int
    parent: List[Optional[int]]
    parent_edge_weight: List[int]
    dist: List[int]
    children: List[List[int]]
    depth: List[int]

    @property
    def vertex_count(self) -> int:
        return len(self.parent)

    @classmethod
    def from_parents(cls, graph: Graph, parents: Sequence[Optional[int]]) -> 'ShortestPathTree':
        """Build a tree from a parent array, deriving dist, depth and children."""
        n = graph.vertex_count
        source = graph.source
        if len(parents) != n:
            raise InvalidTree(source, f"parent array has {len(parents)} entries, expected {n}")
        if parents[source] is not None:
            raise InvalidTree(source, "source has a parent")

        children: List[List[int]] = [[] for _ in range(n)]
        weights = [0] * n
        for v, p in enumerate(parents):
            if v == source:
                continue
            if p is None:
                raise InvalidTree(v, "missing parent")
            if not graph.has_edge(p, v):
                raise InvalidTree(v, f"parent {p} is not joined by an edge")
            weights[v] = graph.weight(p, v)
            children[p].append(v)

        dist = [0] * n
        depth = [0] * n
        reached = 1
        pending = deque([source])
        while pending:
            u = pending.popleft()
            for c in children[u]:
                dist[c] = checked_add(dist[u], weights[c])
                depth[c] = depth[u] + 1
                reached += 1
                pending.append(c)
        if reached != n:
            seen = set(subtree_from(children, source))
            stray = min(v for v in range(n) if v not in seen)
            raise InvalidTree(stray, "parent chain does not reach the source")

        return cls(source, list(parents), weights, dist, children, depth)

    def clone(self) -> 'ShortestPathTree':
        return ShortestPathTree(
            self.source,
            list(self.parent),
            list(self.parent_edge_weight),
            list(self.dist),
            [list(c) for c in self.children],
            list(self.depth),
        )

    def subtree(self, v: int) -> List[int]:
        """Descendants of v including v, in preorder."""
        return subtree_from(self.children, v)

    def ancestors(self, v: int) -> List[int]:
        """Parent chain from v up to the source, both ends included."""
        chain = [v]
        p = self.parent[v]
        while p is not None:
            chain.append(p)
            p = self.parent[p]
        return chain

    def root_path(self, v: int) -> List[int]:
        """Tree path from the source down to v."""
        return self.ancestors(v)[::-1]

    def reattach(self, v: int, new_parent: int, weight: int) -> None:
        """
        Make new_parent the parent of v via an edge of the given weight.

        Keeps children and the depth of v's subtree current. Distances are
        left to the caller.
        """
        old_parent = self.parent[v]
        if old_parent != new_parent:
            if old_parent is not None:
                self.children[old_parent].remove(v)
            self.children[new_parent].append(v)
            self.parent[v] = new_parent
            shift = self.depth[new_parent] + 1 - self.depth[v]
            if shift:
                for u in self.subtree(v):
                    self.depth[u] += shift
        self.parent_edge_weight[v] = weight


def subtree_from(children: Sequence[Sequence[int]], v: int) -> List[int]:
    out = []
    stack = [v]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(reversed(children[u]))
    return out


@dataclass(frozen=True)
class WeightUpdate:
    """New weight for the existing edge (tail, head)."""

    tail: int
    head: int
    new_weight: int


@dataclass
class UpdateStats:
    affected: int = 0
    strongly_affected: int = 0
    extractions: int = 0
    edges_examined: int = 0
    enqueues: int = 0
    removals: int = 0
    merges: int = 0
    edge_changes: int = 0
    warnings: List[str] = field(default_factory=list)


@dataclass
class Extraction:
    """One extract-min step: vertex reparented and the subtree it consolidated."""

    vertex: int
    parent: int
    original_parent: Optional[int]
    delta: int
    members: List[int]


@dataclass
class UpdateTrace:
    extractions: List[Extraction] = field(default_factory=list)
    affected: List[int] = field(default_factory=list)
    examined: List[int] = field(default_factory=list)

    @property
    def deltas(self) -> List[int]:
        return [e.delta for e in self.extractions]


@dataclass
class Unchanged:
    stats: UpdateStats = field(default_factory=UpdateStats)
    kind = 'unchanged'


@dataclass
class Updated:
    tree: ShortestPathTree
    stats: UpdateStats
    trace: UpdateTrace = field(default_factory=UpdateTrace)
    kind = 'updated'


@dataclass
class NegativeCycle:
    """Witness cycle (first vertex repeated last) and its total weight."""

    witness: List[int]
    length: int
    stats: UpdateStats = field(default_factory=UpdateStats)
    trace: UpdateTrace = field(default_factory=UpdateTrace)
    kind = 'negative_cycle'


UpdateOutcome = Union[Unchanged, Updated, NegativeCycle]


def build_graph(vertex_count: int, source: int, arcs: Sequence[Arc]) -> Graph:
    """
    Build a graph and check that every vertex is reachable from source.

    Raises:
        IdOutOfRange, SelfLoop, DuplicateEdge, UnreachableVertex
    """
    if not 0 <= source < max(vertex_count, 0):
        raise IdOutOfRange(source, vertex_count)
    graph = Graph(vertex_count, source, arcs)

    seen = [False] * vertex_count
    seen[source] = True
    pending = [source]
    while pending:
        u = pending.pop()
        for eid in graph.out_adj[u]:
            v = graph.heads[eid]
            if not seen[v]:
                seen[v] = True
                pending.append(v)
    missing = [v for v in range(vertex_count) if not seen[v]]
    if missing:
        raise UnreachableVertex(missing)
    return graph


def set_weight(graph: Graph, update: WeightUpdate) -> int:
    """Replace the weight of an existing edge and return the old one."""
    eid = graph.edge_id(update.tail, update.head)
    if not INT64_MIN <= update.new_weight <= INT64_MAX:
        raise WeightOverflow(f"weight {update.new_weight}")
    old = graph.weights[eid]
    graph.weights[eid] = update.new_weight
    # An increase cannot create a 0-cycle, so a clean verdict survives it
    if not (update.new_weight > old and graph.zero_cycle_checked and graph.zero_cycle is None):
        graph.zero_cycle_checked = False
        graph.zero_cycle = None
    return old


def path_length(graph: Graph, path: Sequence[int]) -> int:
    total = 0
    for u, v in zip(path, path[1:]):
        eid = graph.edge_index.get((u, v))
        if eid is None:
            raise BrokenPath((u, v))
        total = checked_add(total, graph.weights[eid])
    return total


def subtree(tree: ShortestPathTree, v: int) -> List[int]:
    return tree.subtree(v)


def ancestors(tree: ShortestPathTree, v: int) -> List[int]:
    return tree.ancestors(v)


def count_edge_changes(old: ShortestPathTree, new: ShortestPathTree, updated_edge: WeightUpdate) -> int:
    """
    Vertices whose parent differs, plus one when the updated edge is a tree
    edge of both trees (its weight changed).
    """
    changes = sum(1 for a, b in zip(old.parent, new.parent) if a != b)
    head, tail = updated_edge.head, updated_edge.tail
    if old.parent[head] == tail and new.parent[head] == tail:
        changes += 1
    return changes


def validate_tree(graph: Graph, tree: ShortestPathTree) -> None:
    """
    Check structure and tightness: spanning, acyclic, tree edges exist with
    matching weights, dist/children/depth consistent.

    Raises:
        InvalidTree naming the first offending vertex
    """
    n = graph.vertex_count
    s = graph.source
    if tree.vertex_count != n:
        raise InvalidTree(s, f"tree spans {tree.vertex_count} vertices, graph has {n}")
    if tree.parent[s] is not None:
        raise InvalidTree(s, "source has a parent")
    if tree.dist[s] != 0:
        raise InvalidTree(s, f"source distance is {tree.dist[s]}")
    if tree.depth[s] != 0:
        raise InvalidTree(s, "source depth is not 0")

    for v in range(n):
        if v == s:
            continue
        p = tree.parent[v]
        if p is None:
            raise InvalidTree(v, "missing parent")
        eid = graph.edge_index.get((p, v))
        if eid is None:
            raise InvalidTree(v, f"parent {p} is not joined by an edge")
        weight = graph.weights[eid]
        if tree.parent_edge_weight[v] != weight:
            raise InvalidTree(v, f"stored parent weight {tree.parent_edge_weight[v]} != {weight}")
        if tree.dist[v] != tree.dist[p] + weight:
            raise InvalidTree(v, f"dist {tree.dist[v]} != {tree.dist[p]} + {weight}")
        if tree.depth[v] != tree.depth[p] + 1:
            raise InvalidTree(v, "depth does not follow the parent")

    for u in range(n):
        for c in tree.children[u]:
            if tree.parent[c] != u:
                raise InvalidTree(c, f"listed as child of {u} but parent is {tree.parent[c]}")
    if sum(len(c) for c in tree.children) != n - 1:
        raise InvalidTree(s, "children lists are not the inverse of parent")

    # Depth consistency rules out cycles; this catches a disconnected remainder
    if len(tree.subtree(s)) != n:
        raise InvalidTree(s, "tree does not span the graph")


def validate_spt(graph: Graph, tree: ShortestPathTree) -> None:
    """validate_tree plus the triangle inequality over every edge."""
    validate_tree(graph, tree)
    dist = tree.dist
    for u, v, w in graph.arcs():
        if dist[u] + w < dist[v]:
            raise InvalidTree(v, f"edge ({u}, {v}) gives {dist[u] + w} < {dist[v]}")
