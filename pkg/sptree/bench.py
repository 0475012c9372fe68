"""
Benchmark driver: dynamic updates against from-scratch Bellman-Ford.

Each scenario generates one graph and a stream of updates, applies them
through an SptTracker, and records the work counters of every update next
to the time a full recomputation takes on the same graph.
"""

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, TextIO

import psutil

from logcore import get_logger
from sptree.config import Scenario
from sptree.generator import generate, generate_updates
from sptree.graph import Graph, NegativeCycle, UpdateOutcome, Updated
from sptree.static import bellman_ford
from sptree.tracker import SptTracker, direction_of

log = get_logger(__name__)


@dataclass
class BenchRow:
    """One update of one scenario. Timings are in milliseconds."""
    n: int
    m: int
    index: int
    direction: str
    outcome: str
    n0: int
    ns: int
    m0: int
    edges_examined: int
    extractions: int
    enqueues: int
    removals: int
    dynamic_ms: float
    scratch_ms: Optional[float]
    rss_mb: float


BENCH_FIELDS = [f.name for f in fields(BenchRow)]


def affected_edges(graph: Graph, outcome: UpdateOutcome, direction: str) -> int:
    """
    Edges incident to the affected vertices: entering them for an increase,
    leaving them for a decrease.
    """
    if not isinstance(outcome, (Updated, NegativeCycle)):
        return 0
    adjacency = graph.in_adj if direction == 'increase' else graph.out_adj
    return sum(len(adjacency[v]) for v in outcome.trace.affected)


def rss_mb() -> float:
    return psutil.Process().memory_info().rss / (1024 * 1024)


def run_scenario(
    scenario: Scenario,
    scratch: bool = True,
    merge: bool = False,
    strict_positive_base: bool = True,
) -> List[BenchRow]:
    """Run one scenario in the current process; stops at a negative cycle."""
    graph = generate(scenario.n, scenario.m, scenario.seed, base_max=scenario.base_max,
                     potential_max=scenario.potential_max, strict_positive_base=strict_positive_base)
    updates = generate_updates(graph, scenario.seed + 1, scenario.updates, scenario.direction,
                               scenario.allow_inconsistency)
    tracker = SptTracker.from_graph(graph, merge=merge)

    rows = []
    for index, update in enumerate(updates, start=1):
        direction = direction_of(graph, update)
        outcome = tracker.apply(update)
        scratch_ms = None
        if scratch:
            started = time.perf_counter()
            bellman_ford(graph)
            scratch_ms = round((time.perf_counter() - started) * 1000.0, 3)
        stats = outcome.stats
        rows.append(BenchRow(
            n=scenario.n,
            m=scenario.m,
            index=index,
            direction=direction,
            outcome=outcome.kind,
            n0=stats.affected,
            ns=stats.strongly_affected,
            m0=affected_edges(graph, outcome, direction),
            edges_examined=stats.edges_examined,
            extractions=stats.extractions,
            enqueues=stats.enqueues,
            removals=stats.removals,
            dynamic_ms=round(tracker.last_elapsed_ms, 3),
            scratch_ms=scratch_ms,
            rss_mb=round(rss_mb(), 1),
        ))
        if isinstance(outcome, NegativeCycle):
            log.info("scenario stopped at a negative cycle", extra={'context': {
                'n': scenario.n, 'm': scenario.m, 'seed': scenario.seed, 'index': index}})
            break
    return rows


def run_bench(
    scenarios: Sequence[Scenario],
    jobs: int = 1,
    scratch: bool = True,
    merge: bool = False,
    strict_positive_base: bool = True,
) -> List[BenchRow]:
    """Rows of every scenario, in scenario order; jobs > 1 uses a process pool."""
    run = partial(run_scenario, scratch=scratch, merge=merge, strict_positive_base=strict_positive_base)
    if jobs > 1 and len(scenarios) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, scenarios))
    else:
        results = [run(scenario) for scenario in scenarios]
    return [row for rows in results for row in rows]


def write_csv(rows: Sequence[BenchRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=BENCH_FIELDS, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        record = asdict(row)
        if record['scratch_ms'] is None:
            record['scratch_ms'] = ''
        writer.writerow(record)


def summarize(rows: Sequence[BenchRow]) -> Dict[str, Any]:
    dynamic = sum(r.dynamic_ms for r in rows)
    timed = [r.scratch_ms for r in rows if r.scratch_ms is not None]
    summary: Dict[str, Any] = {
        'updates': len(rows),
        'dynamic_ms': round(dynamic, 3),
        'scratch_ms': round(sum(timed), 3) if timed else None,
        'peak_rss_mb': max((r.rss_mb for r in rows), default=0.0),
    }
    if timed and dynamic > 0:
        summary['speedup'] = round(sum(timed) / dynamic, 1)
    return summary


def summary_line(summary: Dict[str, Any]) -> str:
    scratch = summary['scratch_ms']
    parts = [
        f"updates={summary['updates']}",
        f"dynamic_ms={summary['dynamic_ms']}",
        f"scratch_ms={'-' if scratch is None else scratch}",
        f"speedup={summary.get('speedup', '-')}",
        f"peak_rss_mb={summary['peak_rss_mb']:.1f}",
    ]
    return 'bench summary: ' + ' '.join(parts)
