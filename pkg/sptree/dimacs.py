"""
Text formats: DIMACS-style graphs, update streams, and tree dumps.

Graph files use 1-based ids:

    c name 1 s            optional symbolic label
    p sp <n> <m>
    a <tail> <head> <weight>

Negative weights are accepted. Update files hold one `<tail> <head>
<new_weight>` per line; tails and heads may be ids or labels. Weights may be
real numbers when a scale factor turns them into integers.
"""

from decimal import Decimal, InvalidOperation
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sptree.errors import (
    CountMismatch,
    DimacsSyntaxError,
    DuplicateArc,
    IdOutOfRange,
)
from sptree.graph import Graph, ShortestPathTree, WeightUpdate, build_graph


def parse_weight(token: str, scale: int = 1, line: Optional[int] = None) -> int:
    """Integer weight from a token, multiplied by scale; must come out integral."""
    try:
        value = Decimal(token) * scale
    except InvalidOperation:
        raise DimacsSyntaxError(f"bad weight {token!r}", line) from None
    if not value.is_finite() or value != value.to_integral_value():
        raise DimacsSyntaxError(f"weight {token} is not integral at scale {scale}", line)
    return int(value)


def _parse_id(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DimacsSyntaxError(f"bad vertex id {token!r}", line) from None


def parse_graph(text: str, source: int = 1, scale: int = 1) -> Graph:
    """
    Parse a graph; source is a 1-based id.

    Raises:
        DimacsSyntaxError, CountMismatch, DuplicateArc, IdOutOfRange,
        UnreachableVertex
    """
    header: Optional[Tuple[int, int]] = None
    arcs: List[Tuple[int, int, int]] = []
    seen: Dict[Tuple[int, int], int] = {}
    labels: Dict[int, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        kind = tokens[0]
        if kind == 'c':
            if len(tokens) == 4 and tokens[1] == 'name':
                labels[_parse_id(tokens[2], lineno) - 1] = tokens[3]
            continue
        if kind == 'p':
            if header is not None:
                raise DimacsSyntaxError("second problem line", lineno)
            if len(tokens) != 4 or tokens[1] != 'sp':
                raise DimacsSyntaxError("expected 'p sp <n> <m>'", lineno)
            n, m = _parse_id(tokens[2], lineno), _parse_id(tokens[3], lineno)
            if n < 1 or m < 0:
                raise DimacsSyntaxError(f"bad problem size {n} {m}", lineno)
            header = (n, m)
            continue
        if kind == 'a':
            if header is None:
                raise DimacsSyntaxError("arc before problem line", lineno)
            if len(tokens) != 4:
                raise DimacsSyntaxError("expected 'a <tail> <head> <weight>'", lineno)
            tail, head = _parse_id(tokens[1], lineno), _parse_id(tokens[2], lineno)
            for vertex in (tail, head):
                if not 1 <= vertex <= header[0]:
                    raise DimacsSyntaxError(f"vertex {vertex} outside 1..{header[0]}", lineno)
            if tail == head:
                raise DimacsSyntaxError(f"self-loop on vertex {tail}", lineno)
            if (tail, head) in seen:
                raise DuplicateArc(f"arc {tail} -> {head} repeats line {seen[(tail, head)]}", lineno)
            seen[(tail, head)] = lineno
            arcs.append((tail - 1, head - 1, parse_weight(tokens[3], scale, lineno)))
            continue
        raise DimacsSyntaxError(f"unknown line type {kind!r}", lineno)

    if header is None:
        raise DimacsSyntaxError("missing problem line")
    n, m = header
    if len(arcs) != m:
        raise CountMismatch(f"problem line declares {m} arcs, found {len(arcs)}")
    if not 1 <= source <= n:
        raise IdOutOfRange(source, n)
    for vertex in labels:
        if not 0 <= vertex < n:
            raise IdOutOfRange(vertex + 1, n)

    graph = build_graph(n, source - 1, arcs)
    graph.labels = labels
    return graph


def write_graph(graph: Graph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    for vertex in sorted(graph.labels):
        lines.append(f"c name {vertex + 1} {graph.labels[vertex]}")
    lines.append(f"p sp {graph.vertex_count} {graph.edge_count}")
    lines.extend(f"a {u + 1} {v + 1} {w}" for u, v, w in graph.arcs())
    return '\n'.join(lines) + '\n'


def _resolve(token: str, names: Mapping[str, int], vertex_count: Optional[int], line: int) -> int:
    try:
        vertex = int(token) - 1
    except ValueError:
        if token not in names:
            raise DimacsSyntaxError(f"unknown vertex {token!r}", line) from None
        return names[token]
    if vertex < 0 or (vertex_count is not None and vertex >= vertex_count):
        raise DimacsSyntaxError(f"vertex {token} out of range", line)
    return vertex


def parse_updates(
    text: str,
    names: Optional[Mapping[str, int]] = None,
    scale: int = 1,
    vertex_count: Optional[int] = None,
) -> List[WeightUpdate]:
    """
    One update per line; blank lines and lines starting with '#' are skipped.

    names maps labels to 0-based ids (see label_index).
    """
    names = names or {}
    updates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('#'):
            continue
        tokens = stripped.split()
        if len(tokens) != 3:
            raise DimacsSyntaxError("expected '<tail> <head> <new_weight>'", lineno)
        tail = _resolve(tokens[0], names, vertex_count, lineno)
        head = _resolve(tokens[1], names, vertex_count, lineno)
        updates.append(WeightUpdate(tail, head, parse_weight(tokens[2], scale, lineno)))
    return updates


def write_updates(updates: Sequence[WeightUpdate]) -> str:
    return ''.join(f"{u.tail + 1} {u.head + 1} {u.new_weight}\n" for u in updates)


def label_index(graph: Graph) -> Dict[str, int]:
    return {label: vertex for vertex, label in graph.labels.items()}


def write_tree(tree: ShortestPathTree) -> str:
    """`t <vertex> <parent> <dist>` per vertex, parent 0 for the source."""
    lines = []
    for v, p in enumerate(tree.parent):
        parent = 0 if p is None else p + 1
        lines.append(f"t {v + 1} {parent} {tree.dist[v]}")
    return '\n'.join(lines) + '\n'


def write_dot(tree: ShortestPathTree, graph: Graph) -> str:
    """Graphviz digraph of the tree, vertices labelled with name and distance."""
    lines = ['digraph spt {', '  rankdir=TB;']
    for v in range(tree.vertex_count):
        shape = 'doublecircle' if v == tree.source else 'circle'
        lines.append(f'  {v + 1} [label="{graph.name(v)}\\n{tree.dist[v]}", shape={shape}];')
    for v, p in enumerate(tree.parent):
        if p is not None:
            lines.append(f'  {p + 1} -> {v + 1} [label="{tree.parent_edge_weight[v]}"];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def format_path(graph: Graph, path: Sequence[int]) -> str:
    return ' -> '.join(graph.name(v) for v in path)
