"""
Addressable min-queue of vertices, backed by a pairing heap.

Each vertex has at most one live entry. An entry is ordered by
(delta, candidate_distance, depth, vertex); a new entry for a queued vertex
only replaces the old one when its key is strictly smaller. Replacement is a
decrease-key (cut and relink, amortized O(1)); removal and extract-min cost
amortized O(log n).
"""

import enum
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from sptree.errors import EmptyQueue, QueueOrderViolation

Key = Tuple[int, int, int, int]


@dataclass(frozen=True)
class QueueEntry:
    """Candidate: reparent vertex under candidate_parent, shifting it by delta."""

    vertex: int
    candidate_parent: int
    delta: int
    candidate_distance: int
    depth: int

    @property
    def key(self) -> Key:
        return (self.delta, self.candidate_distance, self.depth, self.vertex)


class EnqueueResult(enum.Enum):
    INSERTED = 'inserted'
    REPLACED = 'replaced'
    IGNORED = 'ignored'


class _Node:
    # prev is the parent for a first child, otherwise the left sibling
    __slots__ = 'entry', 'key', 'child', 'sibling', 'prev'

    def __init__(self, entry: QueueEntry):
        self.entry = entry
        self.key = entry.key
        self.child: Optional['_Node'] = None
        self.sibling: Optional['_Node'] = None
        self.prev: Optional['_Node'] = None


class VertexQueue:
    """
    ENQUEUE / EXTRACTMIN / REMOVE over vertices.

    With monotone=True, extract_min raises QueueOrderViolation when the
    extracted delta is smaller than the previous one; the update algorithms
    turn this on in audit mode.
    """

    def __init__(self, monotone: bool = False):
        self._root: Optional[_Node] = None
        self._nodes: Dict[int, _Node] = {}
        self.monotone = monotone
        self._last_delta: Optional[int] = None

    def __len__(self) -> int:
        return len(self._nodes)

    def __bool__(self) -> bool:
        return self._root is not None

    def __contains__(self, vertex: int) -> bool:
        return vertex in self._nodes

    def get(self, vertex: int) -> Optional[QueueEntry]:
        node = self._nodes.get(vertex)
        return node.entry if node is not None else None

    def peek(self) -> QueueEntry:
        if self._root is None:
            raise EmptyQueue("peek on an empty queue")
        return self._root.entry

    def enqueue(self, entry: QueueEntry) -> EnqueueResult:
        node = self._nodes.get(entry.vertex)
        if node is None:
            node = _Node(entry)
            self._nodes[entry.vertex] = node
            self._root = _link(self._root, node)
            return EnqueueResult.INSERTED

        key = entry.key
        if not key < node.key:
            return EnqueueResult.IGNORED
        node.entry = entry
        node.key = key
        if node is not self._root:
            _cut(node)
            self._root = _link(self._root, node)
        return EnqueueResult.REPLACED

    def extract_min(self) -> QueueEntry:
        root = self._root
        if root is None:
            raise EmptyQueue("extract_min on an empty queue")
        entry = root.entry
        if self.monotone:
            if self._last_delta is not None and entry.delta < self._last_delta:
                raise QueueOrderViolation(
                    f"extracted delta {entry.delta} after {self._last_delta}"
                )
            self._last_delta = entry.delta
        del self._nodes[entry.vertex]
        self._root = _merge_pairs(root.child)
        root.child = None
        return entry

    def remove(self, vertex: int) -> bool:
        node = self._nodes.pop(vertex, None)
        if node is None:
            return False
        if node is self._root:
            self._root = _merge_pairs(node.child)
        else:
            _cut(node)
            self._root = _link(self._root, _merge_pairs(node.child))
        node.child = None
        return True


def _link(a: Optional[_Node], b: Optional[_Node]) -> Optional[_Node]:
    """Meld two heap roots; the larger becomes the first child of the smaller."""
    if a is None:
        return b
    if b is None:
        return a
    if b.key < a.key:
        a, b = b, a
    b.prev = a
    b.sibling = a.child
    if a.child is not None:
        a.child.prev = b
    a.child = b
    a.prev = None
    a.sibling = None
    return a


def _cut(node: _Node) -> None:
    """Detach node (with its children) from its parent or sibling list."""
    prev = node.prev
    if prev is not None:
        if prev.child is node:
            prev.child = node.sibling
        else:
            prev.sibling = node.sibling
    if node.sibling is not None:
        node.sibling.prev = prev
    node.prev = None
    node.sibling = None


def _merge_pairs(first: Optional[_Node]) -> Optional[_Node]:
    """Two-pass pairing: meld siblings left to right in pairs, then fold right to left."""
    if first is None:
        return None
    pairs = []
    node = first
    while node is not None:
        a = node
        b = a.sibling
        node = b.sibling if b is not None else None
        a.prev = a.sibling = None
        if b is not None:
            b.prev = b.sibling = None
        pairs.append(_link(a, b))
    root = None
    for heap in reversed(pairs):
        root = _link(heap, root)
    return root
