"""
Unit tests for the benchmark driver.
"""

import csv
import io

import pytest

from sptree.bench import (
    BENCH_FIELDS,
    BenchRow,
    affected_edges,
    run_bench,
    run_scenario,
    summarize,
    summary_line,
    write_csv,
)
from sptree.config import Scenario
from sptree.graph import Unchanged, WeightUpdate
from sptree.incremental import increase_weight
from sptree.tests.helpers import S, U


class TestRunScenario:
    @pytest.mark.parametrize('direction', ['increase', 'decrease', 'either'])
    def test_work_bounded_by_affected_region(self, direction):
        rows = run_scenario(Scenario(n=60, m=300, seed=5, updates=40, direction=direction))

        assert len(rows) == 40
        assert [r.index for r in rows] == list(range(1, 41))
        for row in rows:
            if direction != 'either':
                assert row.direction == direction
            assert row.extractions <= row.n0
            assert row.edges_examined <= row.m0
            assert row.ns <= row.n0
            assert row.scratch_ms is not None
            assert row.rss_mb > 0

    def test_stops_at_negative_cycle(self):
        scenario = Scenario(n=15, m=60, seed=2, updates=200, direction='decrease', allow_inconsistency=True)
        rows = run_scenario(scenario, scratch=False)

        if rows[-1].outcome == 'negative_cycle':
            assert all(r.outcome != 'negative_cycle' for r in rows[:-1])
        else:
            assert len(rows) == 200
        assert all(r.scratch_ms is None for r in rows)

    def test_deterministic_counters(self):
        scenario = Scenario(n=40, m=160, seed=8, updates=20)
        first = [(r.outcome, r.n0, r.edges_examined) for r in run_scenario(scenario, scratch=False)]
        second = [(r.outcome, r.n0, r.edges_examined) for r in run_scenario(scenario, scratch=False)]
        assert first == second

    def test_run_bench_keeps_scenario_order(self):
        rows = run_bench([Scenario(n=10, m=30, updates=3), Scenario(n=20, m=50, updates=2)], scratch=False)
        assert [(r.n, r.index) for r in rows] == [(10, 1), (10, 2), (10, 3), (20, 1), (20, 2)]


class TestAffectedEdges:
    def test_unchanged_counts_nothing(self, detour):
        assert affected_edges(detour, Unchanged(), 'increase') == 0

    def test_increase_counts_incoming(self, detour, detour_tree):
        outcome = increase_weight(detour, detour_tree, WeightUpdate(S, U, 9))
        expected = sum(len(detour.in_adj[v]) for v in outcome.trace.affected)
        assert affected_edges(detour, outcome, 'increase') == expected


def _row(**overrides):
    values = dict(n=10, m=20, index=1, direction='increase', outcome='updated', n0=3, ns=2, m0=5,
                  edges_examined=4, extractions=2, enqueues=2, removals=0, dynamic_ms=0.5,
                  scratch_ms=2.0, rss_mb=30.0)
    values.update(overrides)
    return BenchRow(**values)


class TestOutput:
    def test_csv(self):
        buf = io.StringIO()
        write_csv([_row(), _row(index=2, scratch_ms=None)], buf)
        lines = buf.getvalue().splitlines()

        assert lines[0] == ','.join(BENCH_FIELDS)
        rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
        assert rows[0]['scratch_ms'] == '2.0'
        assert rows[1]['scratch_ms'] == ''

    def test_summarize(self):
        summary = summarize([_row(), _row(index=2, dynamic_ms=1.5, scratch_ms=6.0, rss_mb=41.0)])

        assert summary['updates'] == 2
        assert summary['dynamic_ms'] == 2.0
        assert summary['scratch_ms'] == 8.0
        assert summary['speedup'] == 4.0
        assert summary['peak_rss_mb'] == 41.0

    def test_summarize_without_scratch(self):
        summary = summarize([_row(scratch_ms=None)])
        assert summary['scratch_ms'] is None
        assert 'speedup' not in summary

    def test_summary_line(self):
        line = summary_line(summarize([_row(), _row(index=2, dynamic_ms=1.5, scratch_ms=6.0, rss_mb=41.0)]))
        assert line == 'bench summary: updates=2 dynamic_ms=2.0 scratch_ms=8.0 speedup=4.0 peak_rss_mb=41.0'
        assert 'scratch_ms=- speedup=-' in summary_line(summarize([_row(scratch_ms=None)]))
