"""
Helpers shared by the sptree test modules.
"""

from pathlib import Path

import networkx as nx

from sptree.dimacs import parse_graph
from sptree.graph import Graph

FIXTURES = Path(__file__).resolve().parents[2] / 'fixtures'

# Vertex ids (0-based) of the shipped instances
S, U, V, W, X, Y, Z = range(7)
RING = dict(s=0, u=1, v=2, w=3, y=4, z=5)
ZERO_RING = dict(s=0, u=1, w=2, z=3, v=4, x=5)


def load(name: str) -> Graph:
    return parse_graph((FIXTURES / name).read_text())


def to_networkx(graph: Graph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(graph.vertex_count))
    for u, v, w in graph.arcs():
        g.add_edge(u, v, weight=w)
    return g


def same_tree(a, b) -> bool:
    """Equal parents, distances, weights and depths; child order ignored."""
    return (
        a.parent == b.parent
        and a.dist == b.dist
        and a.parent_edge_weight == b.parent_edge_weight
        and a.depth == b.depth
        and [sorted(c) for c in a.children] == [sorted(c) for c in b.children]
    )
