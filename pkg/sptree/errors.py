"""
Exception hierarchy for sptree.

Negative cycles are reported as outcomes, not exceptions; everything here is
a contract violation or an input problem.
"""

from typing import Iterable, Optional, Sequence, Tuple


class SptreeError(Exception):
    """Base class for every sptree error"""


# Graph construction and lookup

class DuplicateEdge(SptreeError):
    """Two arcs share the same (tail, head) pair"""

    def __init__(self, tail: int, head: int):
        self.tail = tail
        self.head = head
        super().__init__(f"Duplicate edge ({tail}, {head})")


class UnreachableVertex(SptreeError):
    """Some vertices cannot be reached from the source"""

    def __init__(self, vertices: Iterable[int]):
        self.vertices = sorted(vertices)
        preview = ', '.join(str(v) for v in self.vertices[:10])
        more = '' if len(self.vertices) <= 10 else f" (+{len(self.vertices) - 10} more)"
        super().__init__(f"Unreachable from source: {preview}{more}")


class IdOutOfRange(SptreeError):
    """A vertex id outside [0, vertex_count)"""

    def __init__(self, vertex: int, vertex_count: int):
        self.vertex = vertex
        self.vertex_count = vertex_count
        super().__init__(f"Vertex {vertex} out of range for {vertex_count} vertices")


class SelfLoop(SptreeError):
    """Arcs from a vertex to itself are rejected"""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"Self-loop on vertex {vertex}")


class NoSuchEdge(SptreeError):
    """The graph has no arc for the requested pair"""

    def __init__(self, tail: int, head: int):
        self.tail = tail
        self.head = head
        super().__init__(f"No edge ({tail}, {head})")


class BrokenPath(SptreeError):
    """A path step is not an edge of the graph"""

    def __init__(self, edge: Tuple[int, int]):
        self.edge = edge
        super().__init__(f"Path uses missing edge {edge}")


class WeightOverflow(SptreeError):
    """A distance left the signed 64-bit range"""


class InvalidTree(SptreeError):
    """A ShortestPathTree violates one of its structural invariants"""

    def __init__(self, vertex: int, reason: str):
        self.vertex = vertex
        self.reason = reason
        super().__init__(f"Vertex {vertex}: {reason}")


# Updates

class InvalidUpdate(SptreeError):
    """An update does not match the requested direction"""


class NotAnIncrease(InvalidUpdate):
    pass


class NotADecrease(InvalidUpdate):
    pass


class UnchangedWeight(InvalidUpdate):
    """The new weight equals the current one"""


# Queue

class EmptyQueue(SptreeError):
    pass


class QueueOrderViolation(SptreeError):
    """Audited queue extracted a key smaller than the previous one"""


# Static algorithms

class PreconditionViolated(SptreeError):
    pass


class InconsistentGraph(SptreeError):
    """The graph contains a negative cycle"""

    def __init__(self, message: str, witness: Optional[Sequence[int]] = None):
        self.witness = list(witness) if witness is not None else None
        super().__init__(message)


# Minimal-change merging

class MergeUnavailable(SptreeError):
    """Branch merging cannot be guaranteed correct on this graph"""


class ZeroCyclePresent(MergeUnavailable):
    def __init__(self, cycle: Sequence[int]):
        self.cycle = list(cycle)
        super().__init__(f"Graph has a 0-cycle through {len(self.cycle) - 1} vertices")


# Oracle and generator

class CapExceeded(SptreeError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} candidate trees exceed the cap of {cap}")


class InfeasibleParams(SptreeError):
    pass


# File formats

class FormatError(SptreeError):
    """Base for parse errors; carries the 1-based line number when known"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ''
        super().__init__(f"{prefix}{message}")


class DimacsSyntaxError(FormatError):
    pass


class CountMismatch(FormatError):
    pass


class DuplicateArc(FormatError):
    pass


# Configuration and verification

class ConfigError(SptreeError):
    """Configuration validation error"""


class VerificationFailed(SptreeError):
    """Dynamic result disagrees with the oracle"""

    def __init__(self, vertex: Optional[int], detail: str):
        self.vertex = vertex
        self.detail = detail
        where = f"vertex {vertex}: " if vertex is not None else ''
        super().__init__(f"{where}{detail}")
