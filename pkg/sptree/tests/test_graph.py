"""
Unit tests for the graph core: construction, tree bookkeeping, certificates.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

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
from sptree.generator import generate
from sptree.graph import (
    INT64_MAX,
    ShortestPathTree,
    WeightUpdate,
    build_graph,
    checked_add,
    count_edge_changes,
    path_length,
    set_weight,
    validate_spt,
    validate_tree,
)
from sptree.static import bellman_ford
from sptree.tests.helpers import S, U, V, W, X, Y, Z


class TestBuildGraph:
    """Graph construction and its input checks"""

    def test_adjacency(self):
        """Should index edges by id in both directions"""
        graph = build_graph(3, 0, [(0, 1, 4), (1, 2, -1), (0, 2, 7)])

        assert graph.edge_count == 3
        assert graph.out_adj[0] == [0, 2]
        assert graph.in_adj[2] == [1, 2]
        assert graph.weight(1, 2) == -1
        assert graph.edge_id(0, 2) == 2
        assert graph.has_edge(0, 1)
        assert not graph.has_edge(1, 0)

    def test_unreachable(self):
        """Should list every vertex the source cannot reach"""
        with pytest.raises(UnreachableVertex) as excinfo:
            build_graph(4, 0, [(0, 1, 1), (2, 3, 1)])
        assert excinfo.value.vertices == [2, 3]

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            build_graph(2, 0, [(0, 1, 1), (0, 1, 2)])

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            build_graph(2, 0, [(0, 1, 1), (1, 1, 0)])

    def test_id_out_of_range(self):
        with pytest.raises(IdOutOfRange):
            build_graph(2, 0, [(0, 2, 1)])
        with pytest.raises(IdOutOfRange):
            build_graph(2, 5, [(0, 1, 1)])

    def test_single_vertex(self):
        """A lone source is a valid graph"""
        graph = build_graph(1, 0, [])
        assert graph.edge_count == 0

    def test_missing_edge_lookup(self):
        graph = build_graph(2, 0, [(0, 1, 1)])
        with pytest.raises(NoSuchEdge):
            graph.weight(1, 0)

    def test_weight_out_of_range(self):
        with pytest.raises(WeightOverflow):
            build_graph(2, 0, [(0, 1, INT64_MAX + 1)])

    def test_names_default_to_one_based_ids(self, detour):
        graph = build_graph(2, 0, [(0, 1, 1)])
        assert graph.name(1) == '2'
        assert detour.name(Z) == 'z'


class TestGraphCopy:
    """Graph.copy independence"""

    def test_copy_is_deep(self, detour):
        clone = detour.copy()
        set_weight(clone, WeightUpdate(S, U, 9))

        assert detour.weight(S, U) == 1
        assert clone.weight(S, U) == 9
        assert clone.labels == detour.labels
        assert clone.out_adj == detour.out_adj


class TestSetWeight:
    """Weight replacement and the cached 0-cycle verdict"""

    def test_returns_old_weight(self, detour):
        assert set_weight(detour, WeightUpdate(S, X, 3)) == 5
        assert detour.weight(S, X) == 3

    def test_increase_keeps_clean_verdict(self, detour):
        detour.zero_cycle_checked = True
        set_weight(detour, WeightUpdate(S, X, 8))
        assert detour.zero_cycle_checked

    def test_decrease_drops_verdict(self, detour):
        detour.zero_cycle_checked = True
        set_weight(detour, WeightUpdate(S, X, 2))
        assert not detour.zero_cycle_checked

    def test_missing_edge(self, detour):
        with pytest.raises(NoSuchEdge):
            set_weight(detour, WeightUpdate(X, S, 1))


class TestArithmetic:
    def test_checked_add(self):
        assert checked_add(2, -5) == -3
        with pytest.raises(WeightOverflow):
            checked_add(INT64_MAX, 1)

    def test_path_length(self, detour):
        assert path_length(detour, [S, U, W, Y, Z, V]) == 2

    def test_broken_path(self, detour):
        with pytest.raises(BrokenPath) as excinfo:
            path_length(detour, [S, U, Z])
        assert excinfo.value.edge == (U, Z)


class TestShortestPathTree:
    """Tree construction and in-place reparenting"""

    PARENTS = [None, S, U, U, V, W, Y]

    def test_from_parents(self, detour):
        tree = ShortestPathTree.from_parents(detour, self.PARENTS)

        assert tree.dist == [0, 1, 2, 2, 3, 3, 4]
        assert tree.depth == [0, 1, 2, 2, 3, 3, 4]
        assert sorted(tree.children[U]) == [V, W]
        validate_spt(detour, tree)

    def test_from_parents_rejects_non_edge(self, detour):
        parents = list(self.PARENTS)
        parents[X] = W
        with pytest.raises(InvalidTree) as excinfo:
            ShortestPathTree.from_parents(detour, parents)
        assert excinfo.value.vertex == X

    def test_from_parents_rejects_cycle(self):
        graph = build_graph(3, 0, [(0, 1, 1), (1, 2, 1), (2, 1, 1)])
        with pytest.raises(InvalidTree):
            ShortestPathTree.from_parents(graph, [None, 2, 1])

    def test_subtree_and_ancestors(self, detour_tree):
        assert detour_tree.subtree(U) == [U, V, X, W, Y, Z]
        assert detour_tree.ancestors(Z) == [Z, Y, W, U, S]
        assert detour_tree.root_path(X) == [S, U, V, X]

    def test_reattach_updates_depths(self, detour, detour_tree):
        tree = detour_tree
        tree.reattach(V, Z, -2)

        assert tree.parent[V] == Z
        assert V not in tree.children[U]
        assert tree.depth[V] == 5
        assert tree.depth[X] == 6
        assert tree.parent_edge_weight[V] == -2

    def test_clone_is_independent(self, detour_tree):
        clone = detour_tree.clone()
        clone.reattach(X, S, 5)
        assert detour_tree.parent[X] == V
        assert X in detour_tree.children[V]


class TestCertificates:
    """validate_tree and validate_spt name the offending vertex"""

    def test_bad_distance(self, detour, detour_tree):
        detour_tree.dist[Y] += 1
        with pytest.raises(InvalidTree) as excinfo:
            validate_tree(detour, detour_tree)
        assert excinfo.value.vertex == Y

    def test_stale_parent_weight(self, detour, detour_tree):
        detour_tree.parent_edge_weight[X] = 7
        with pytest.raises(InvalidTree) as excinfo:
            validate_tree(detour, detour_tree)
        assert excinfo.value.vertex == X

    def test_triangle_inequality(self, detour, detour_tree):
        """A tight tree that is not shortest fails the SPT check only"""
        set_weight(detour, WeightUpdate(S, X, 1))
        validate_tree(detour, detour_tree)
        with pytest.raises(InvalidTree) as excinfo:
            validate_spt(detour, detour_tree)
        assert excinfo.value.vertex == X


class TestEdgeChanges:
    def test_counts_parents_and_updated_tree_edge(self, detour, detour_tree):
        new = detour_tree.clone()
        new.reattach(X, S, 5)
        assert count_edge_changes(detour_tree, new, WeightUpdate(S, U, 9)) == 2
        assert count_edge_changes(detour_tree, new, WeightUpdate(S, X, 9)) == 1


def random_walk(graph, rng, steps):
    """Walk along out-edges from a random vertex; may revisit vertices and edges."""
    walk = [rng.randrange(graph.vertex_count)]
    for _ in range(steps):
        out = graph.out_adj[walk[-1]]
        if not out:
            break
        walk.append(graph.heads[rng.choice(out)])
    return walk


class TestProperties:
    """Tree and path identities on generated graphs"""

    @pytest.mark.parametrize('seed', range(30))
    def test_subtree_ancestor_duality(self, seed):
        n = 2 + seed % 19
        graph = generate(n, min(n * (n - 1), 3 * n), seed)
        tree = bellman_ford(graph)
        below = {u: set(tree.subtree(u)) for u in range(n)}
        above = {v: set(tree.ancestors(v)) for v in range(n)}

        for u in range(n):
            for v in range(n):
                assert (v in below[u]) == (u in above[v])

    @given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=1, max_value=30))
    @settings(deadline=None, max_examples=100)
    def test_path_length_is_additive(self, seed, steps):
        rng = random.Random(seed)
        graph = generate(12, 40, seed)
        walk = random_walk(graph, rng, steps)
        cut = rng.randrange(len(walk))
        head, tail = walk[:cut + 1], walk[cut:]

        assert path_length(graph, walk) == path_length(graph, head) + path_length(graph, tail)

    @given(
        st.integers(min_value=0, max_value=2**32),
        st.integers(min_value=1, max_value=40),
        st.integers(min_value=-50, max_value=50).filter(bool),
    )
    @settings(deadline=None, max_examples=100)
    def test_reweighting_shifts_by_occurrences(self, seed, steps, theta):
        """A walk changes length by theta once per traversal of the reweighted edge"""
        rng = random.Random(seed)
        graph = generate(6, 20, seed)
        walk = random_walk(graph, rng, steps)
        pairs = list(zip(walk, walk[1:]))
        tail, head = rng.choice(pairs) if pairs and rng.random() < 0.8 else (graph.tails[0], graph.heads[0])
        before = path_length(graph, walk)

        set_weight(graph, WeightUpdate(tail, head, graph.weight(tail, head) + theta))

        assert path_length(graph, walk) - before == theta * pairs.count((tail, head))
