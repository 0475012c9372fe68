"""
Unit tests for the oracle cross-checks.
"""

import pytest

from sptree.bench import affected_edges
from sptree.decremental import decrease_weight
from sptree.errors import VerificationFailed
from sptree.graph import NegativeCycle, Unchanged, UpdateStats, WeightUpdate, set_weight
from sptree.incremental import increase_weight
from sptree.static import bellman_ford
from sptree.tests.helpers import RING, ZERO_RING, S, U, X
from sptree.verify import (
    Verifier,
    VerifyReport,
    check_counters,
    check_negative_cycle,
    compare_with_oracle,
    verify_generated,
)


class TestCompareWithOracle:
    def test_accepts_bellman_ford(self, detour, detour_tree):
        compare_with_oracle(detour, detour_tree)

    def test_names_first_wrong_vertex(self, detour, detour_tree):
        detour_tree.dist[X] += 1
        with pytest.raises(VerificationFailed) as excinfo:
            compare_with_oracle(detour, detour_tree)
        assert excinfo.value.vertex == X
        assert 'oracle 3' in excinfo.value.detail

    def test_wrong_parent(self, detour, detour_tree):
        """Right distances, but x hangs off an edge that is not tight"""
        detour_tree.reattach(X, S, 5)
        with pytest.raises(VerificationFailed) as excinfo:
            compare_with_oracle(detour, detour_tree)
        assert excinfo.value.vertex == X


class TestCheckNegativeCycle:
    def test_rejects_bad_witness(self, ring):
        set_weight(ring, WeightUpdate(RING['v'], RING['u'], -2))
        check_negative_cycle(ring, NegativeCycle([RING['u'], RING['v'], RING['u']], -1))

        with pytest.raises(VerificationFailed):
            check_negative_cycle(ring, NegativeCycle([RING['u'], RING['v']], -1))
        with pytest.raises(VerificationFailed):
            check_negative_cycle(ring, NegativeCycle([RING['u'], RING['v'], RING['u']], -5))

    def test_oracle_disagrees(self, detour):
        with pytest.raises(VerificationFailed):
            check_negative_cycle(detour, NegativeCycle([S, U, S], -1))


class TestCheckCounters:
    """Extractions and examined edges stay within the affected region"""

    def test_detour_increase(self, detour, detour_tree):
        outcome = increase_weight(detour, detour_tree, WeightUpdate(S, U, 9))
        check_counters(detour, outcome, 'increase')

        outcome.stats.edges_examined = affected_edges(detour, outcome, 'increase') + 1
        with pytest.raises(VerificationFailed) as excinfo:
            check_counters(detour, outcome, 'increase')
        assert 'm0' in excinfo.value.detail

    def test_negative_cycle_outcome(self, ring):
        outcome = decrease_weight(ring, bellman_ford(ring), WeightUpdate(RING['v'], RING['u'], -2))
        check_counters(ring, outcome, 'decrease')

        outcome.stats.extractions = len(outcome.trace.affected) + 1
        with pytest.raises(VerificationFailed) as excinfo:
            check_counters(ring, outcome, 'decrease')
        assert 'n0' in excinfo.value.detail

    def test_unchanged_does_no_work(self, detour):
        check_counters(detour, Unchanged(), 'decrease')
        with pytest.raises(VerificationFailed):
            check_counters(detour, Unchanged(stats=UpdateStats(edges_examined=2)), 'decrease')


class TestVerifier:
    def test_detour_with_minimality(self, detour):
        report = Verifier(merge=True).verify_stream(detour, [WeightUpdate(S, U, 9)])

        assert report.updates == 1
        assert report.oracle_checks == 1
        assert report.minimality_checks == 1

    def test_stops_at_negative_cycle(self, ring):
        updates = [WeightUpdate(RING['v'], RING['u'], -2), WeightUpdate(RING['s'], RING['u'], 5)]
        report = Verifier().verify_stream(ring, updates)

        assert report.updates == 1
        assert report.negative_cycles == 1

    def test_zero_cycle_skips_minimality(self, zero_ring):
        report = Verifier(merge=True).verify_stream(zero_ring, [WeightUpdate(ZERO_RING['u'], ZERO_RING['w'], 4)])

        assert report.oracle_checks == 1
        assert report.minimality_checks == 0
        assert report.skipped['merge disabled'] == 1

    def test_generated(self):
        report = verify_generated(Verifier(merge=True, audit=True), seed=11, instances=25, max_n=7)

        assert report.instances == 25
        assert report.updates == 25
        assert report.negative_cycles == 0
        assert report.minimality_checks + sum(report.skipped.values()) == 25

    def test_generated_with_inconsistency(self):
        report = verify_generated(Verifier(), seed=3, instances=40, max_n=8,
                                  direction='decrease', allow_inconsistency=True)
        assert report.oracle_checks + report.negative_cycles == 40


class TestReport:
    def test_lines(self):
        report = VerifyReport(updates=4, oracle_checks=3, negative_cycles=1)
        report.skipped['cap exceeded'] += 2

        assert report.lines() == [
            "updates checked: 4",
            "oracle distance checks: 3",
            "negative cycles confirmed: 1",
            "minimality checks: 0",
            "minimality skipped (cap exceeded): 2",
        ]
