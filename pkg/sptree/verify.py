"""
Cross-check the dynamic algorithms against from-scratch recomputation.

After every update the maintained tree must carry exactly the Bellman-Ford
distances of the updated graph and pass the SPT certificate. With merging
on, small 0-cycle-free instances are also checked for minimal edge changes
against exhaustive enumeration, and the in-loop merge is compared with a
standalone merge of the unmerged result.
"""

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from logcore import get_logger
from sptree.bench import affected_edges
from sptree.errors import CapExceeded, InvalidTree, VerificationFailed
from sptree.generator import generate, generate_update
from sptree.graph import (
    Graph,
    NegativeCycle,
    ShortestPathTree,
    UpdateOutcome,
    Updated,
    WeightUpdate,
    count_edge_changes,
    path_length,
    validate_spt,
)
from sptree.minchange import compute_branches, merge_linked_branches
from sptree.oracle import DEFAULT_CAP, min_edge_changes, recompute
from sptree.static import detect_zero_cycle
from sptree.tracker import SptTracker, apply_update, direction_of

log = get_logger(__name__)


@dataclass
class VerifyReport:
    updates: int = 0
    oracle_checks: int = 0
    negative_cycles: int = 0
    minimality_checks: int = 0
    instances: int = 0
    skipped: Counter = field(default_factory=Counter)

    def lines(self) -> List[str]:
        out = []
        if self.instances:
            out.append(f"instances: {self.instances}")
        out.extend([
            f"updates checked: {self.updates}",
            f"oracle distance checks: {self.oracle_checks}",
            f"negative cycles confirmed: {self.negative_cycles}",
            f"minimality checks: {self.minimality_checks}",
        ])
        for reason, count in sorted(self.skipped.items()):
            out.append(f"minimality skipped ({reason}): {count}")
        return out


def compare_with_oracle(graph: Graph, tree: ShortestPathTree) -> None:
    """
    Raise VerificationFailed at the first vertex whose distance differs from
    Bellman-Ford, or whose tree entry breaks the SPT certificate.
    """
    expected = recompute(graph)
    if isinstance(expected, NegativeCycle):
        raise VerificationFailed(None, "oracle finds a negative cycle but a tree was produced")
    for v in range(graph.vertex_count):
        if tree.dist[v] != expected.dist[v]:
            raise VerificationFailed(v, f"dist {tree.dist[v]} != oracle {expected.dist[v]}")
    try:
        validate_spt(graph, tree)
    except InvalidTree as e:
        raise VerificationFailed(e.vertex, e.reason) from None


def check_negative_cycle(graph: Graph, outcome: NegativeCycle) -> None:
    if not isinstance(recompute(graph), NegativeCycle):
        raise VerificationFailed(None, "negative cycle reported but the oracle finds none")
    witness = outcome.witness
    if len(witness) < 3 or witness[0] != witness[-1]:
        raise VerificationFailed(None, f"witness {witness} is not a closed cycle")
    length = path_length(graph, witness)
    if length != outcome.length or length >= 0:
        raise VerificationFailed(witness[0], f"witness sums to {length}, reported {outcome.length}")


def check_counters(graph: Graph, outcome: UpdateOutcome, direction: str) -> None:
    """
    Work stays inside the affected region: at most n0 extractions and at
    most m0 examined edges (entering the affected vertices for an increase,
    leaving them for a decrease).
    """
    stats = outcome.stats
    if not isinstance(outcome, (Updated, NegativeCycle)):
        if stats.extractions or stats.edges_examined:
            raise VerificationFailed(None, "work recorded for an update that changed nothing")
        return
    n0 = len(outcome.trace.affected)
    m0 = affected_edges(graph, outcome, direction)
    if stats.extractions > n0:
        raise VerificationFailed(None, f"{stats.extractions} extractions, n0 = {n0}")
    if stats.edges_examined > m0:
        raise VerificationFailed(None, f"{stats.edges_examined} edges examined, m0 = {m0}")


def check_branches(old_tree: ShortestPathTree, new_tree: ShortestPathTree, update: WeightUpdate, graph: Graph) -> None:
    """Every branch shifts by a single delta."""
    for branch in compute_branches(old_tree, new_tree, update, graph):
        shifts = {new_tree.dist[v] - old_tree.dist[v] for v in branch.members}
        if len(shifts) != 1:
            raise VerificationFailed(branch.miniroot, f"branch shifts by {sorted(shifts)}")


class Verifier:
    """Applies updates through an SptTracker and checks each outcome."""

    def __init__(
        self,
        merge: bool = False,
        audit: bool = False,
        cap: int = DEFAULT_CAP,
        max_vertices: int = 9,
    ):
        self.merge = merge
        self.audit = audit
        self.cap = cap
        self.max_vertices = max_vertices
        self.report = VerifyReport()

    def verify_stream(self, graph: Graph, updates: Sequence[WeightUpdate]) -> VerifyReport:
        """Check every update in order; stops after a confirmed negative cycle."""
        tracker = SptTracker.from_graph(graph, merge=self.merge, audit=self.audit)
        compare_with_oracle(graph, tracker.tree)
        for index, update in enumerate(updates, start=1):
            outcome = self.check_update(tracker, update)
            log.debug("update verified", extra={'context': {'index': index, 'outcome': outcome.kind}})
            if isinstance(outcome, NegativeCycle):
                break
        return self.report

    def check_update(self, tracker: SptTracker, update: WeightUpdate) -> UpdateOutcome:
        graph = tracker.graph
        small = self.merge and graph.vertex_count <= self.max_vertices
        before_graph = graph.copy() if small else None
        before_tree = tracker.tree.clone() if small else None

        direction = direction_of(graph, update)
        outcome = tracker.apply(update)
        self.report.updates += 1
        check_counters(graph, outcome, direction)
        if isinstance(outcome, NegativeCycle):
            check_negative_cycle(graph, outcome)
            self.report.negative_cycles += 1
            return outcome

        compare_with_oracle(graph, tracker.tree)
        self.report.oracle_checks += 1
        if small:
            self._check_minimality(before_graph, before_tree, graph, tracker.tree, update, outcome)
        return outcome

    def _check_minimality(
        self,
        before_graph: Graph,
        before_tree: ShortestPathTree,
        graph: Graph,
        tree: ShortestPathTree,
        update: WeightUpdate,
        outcome: UpdateOutcome,
    ) -> None:
        if outcome.stats.warnings:
            self.report.skipped['merge disabled'] += 1
            return
        if detect_zero_cycle(graph, tree.dist) is not None:
            self.report.skipped['0-cycle after update'] += 1
            return
        try:
            best = min_edge_changes(graph, before_tree, update, self.cap)
        except CapExceeded:
            self.report.skipped['cap exceeded'] += 1
            return

        changes = outcome.stats.edge_changes
        if changes != best:
            raise VerificationFailed(update.head, f"{changes} edge changes, minimum is {best}")
        check_branches(before_tree, tree, update, graph)

        if isinstance(outcome, Updated):
            old_weight = before_graph.weight(update.tail, update.head)
            unmerged = apply_update(before_graph, before_tree.clone(), update, merge=False)
            if isinstance(unmerged, Updated):
                standalone = merge_linked_branches(before_tree, unmerged.tree, update, graph,
                                                   old_weight=old_weight)
                agreed = count_edge_changes(before_tree, standalone, update)
                if agreed != changes:
                    raise VerificationFailed(
                        update.head, f"in-loop merge gives {changes} changes, standalone merge {agreed}")
        self.report.minimality_checks += 1


def verify_generated(
    verifier: Verifier,
    seed: int,
    instances: int,
    max_n: int,
    direction: str = 'either',
    allow_inconsistency: bool = False,
    base_max: int = 100,
    potential_max: int = 50,
    strict_positive_base: bool = True,
    min_n: Optional[int] = None,
) -> VerifyReport:
    """
    Generate `instances` graphs with one update each and verify them all.

    n is drawn from [min_n, max_n] (min_n defaults to min(5, max_n)) and m
    from [n, 10n], capped at n(n-1).
    """
    rng = random.Random(seed)
    low = min_n if min_n is not None else min(5, max_n)
    for _ in range(instances):
        n = rng.randint(low, max_n)
        m = rng.randint(min(n, n * (n - 1)), min(10 * n, n * (n - 1)))
        graph = generate(n, max(m, n - 1), rng.getrandbits(63), base_max=base_max,
                         potential_max=potential_max, strict_positive_base=strict_positive_base)
        update = generate_update(graph, rng.getrandbits(63), direction, allow_inconsistency)
        verifier.verify_stream(graph, [update])
        verifier.report.instances += 1
    return verifier.report
