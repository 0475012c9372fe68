"""
Unit tests for Bellman-Ford and 0-cycle detection, checked against networkx.
"""

import networkx as nx
import pytest

from sptree.errors import PreconditionViolated
from sptree.generator import generate
from sptree.graph import (
    NegativeCycle,
    ShortestPathTree,
    WeightUpdate,
    build_graph,
    path_length,
    set_weight,
    validate_spt,
)
from sptree.static import bellman_ford, detect_zero_cycle, zero_cycle_status
from sptree.tests.helpers import ZERO_RING, S, U, V, W, Y, to_networkx


class TestBellmanFord:
    """Static SPT construction"""

    def test_detour_tree(self, detour):
        tree = bellman_ford(detour)

        assert isinstance(tree, ShortestPathTree)
        assert tree.parent == [None, S, U, U, V, W, Y]
        assert tree.dist == [0, 1, 2, 2, 3, 3, 4]

    def test_two_vertices_negative_weight(self):
        graph = build_graph(2, 0, [(0, 1, -3)])
        assert bellman_ford(graph).dist == [0, -3]

    def test_negative_cycle_witness(self, ring):
        """Dropping (v, u) to -2 gives u -> v -> u of length -1"""
        set_weight(ring, WeightUpdate(2, 1, -2))
        result = bellman_ford(ring)

        assert isinstance(result, NegativeCycle)
        assert result.witness[0] == result.witness[-1]
        assert result.length == path_length(ring, result.witness) < 0

    @pytest.mark.parametrize('seed', range(25))
    def test_matches_networkx(self, seed):
        graph = generate(40, 160, seed)
        tree = bellman_ford(graph)
        _, expected = nx.bellman_ford_predecessor_and_distance(to_networkx(graph), graph.source)

        assert tree.dist == [expected[v] for v in range(graph.vertex_count)]
        validate_spt(graph, tree)

    @pytest.mark.parametrize('seed', range(25))
    def test_negative_cycle_agrees_with_networkx(self, seed):
        graph = generate(12, 40, seed)
        eid = seed % graph.edge_count
        graph.weights[eid] -= 150
        result = bellman_ford(graph)

        assert isinstance(result, NegativeCycle) == nx.negative_edge_cycle(to_networkx(graph))
        if isinstance(result, NegativeCycle):
            assert path_length(graph, result.witness) == result.length < 0


def brute_force_zero_cycle(graph):
    g = to_networkx(graph)
    for cycle in nx.simple_cycles(g):
        if sum(g[a][b]['weight'] for a, b in zip(cycle, cycle[1:] + cycle[:1])) == 0:
            return True
    return False


class TestZeroCycles:
    """detect_zero_cycle over zero-reduced-cost edges"""

    def test_zero_ring_cycle(self, zero_ring):
        cycle = detect_zero_cycle(zero_ring)
        f = ZERO_RING

        assert cycle == [f['w'], f['z'], f['v'], f['x'], f['w']]
        assert path_length(zero_ring, cycle) == 0

    def test_acyclic_graph(self, detour):
        assert detect_zero_cycle(detour) is None

    def test_supplied_potentials(self, zero_ring):
        """Any feasible potential works, e.g. SPT distances"""
        tree = bellman_ford(zero_ring)
        assert detect_zero_cycle(zero_ring, tree.dist) == detect_zero_cycle(zero_ring)

    def test_infeasible_potentials(self, detour):
        with pytest.raises(PreconditionViolated):
            detect_zero_cycle(detour, [0] * detour.vertex_count)

    def test_negative_cycle_is_a_precondition_error(self, ring):
        set_weight(ring, WeightUpdate(2, 1, -2))
        with pytest.raises(PreconditionViolated):
            detect_zero_cycle(ring)

    def test_overrides(self, zero_ring):
        """Overriding (x, w) back to a heavier weight removes the 0-cycle"""
        eid = zero_ring.edge_id(ZERO_RING['x'], ZERO_RING['w'])
        assert detect_zero_cycle(zero_ring, overrides={eid: 1}) is None

    @pytest.mark.parametrize('seed', range(40))
    def test_strict_positive_base_has_none(self, seed):
        assert detect_zero_cycle(generate(15, 60, seed)) is None

    @pytest.mark.parametrize('seed', range(60))
    def test_complete_on_small_graphs(self, seed):
        """Found exactly when exhaustive simple-cycle enumeration finds one"""
        n = 3 + seed % 6
        m = min(n * (n - 1), 2 * n)
        graph = generate(n, m, seed, base_max=1, strict_positive_base=False)
        cycle = detect_zero_cycle(graph)

        assert (cycle is not None) == brute_force_zero_cycle(graph)
        if cycle is not None:
            assert path_length(graph, cycle) == 0
            assert cycle[0] == cycle[-1]
            assert len(set(cycle)) == len(cycle) - 1

    def test_status_is_cached(self, zero_ring):
        first = zero_cycle_status(zero_ring)
        zero_ring.zero_cycle = None
        assert zero_ring.zero_cycle_checked
        assert zero_cycle_status(zero_ring) is None
        assert first is not None
