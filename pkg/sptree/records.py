"""
Per-update stat records written by `sptree run`.

One record per applied update, either as a JSON line (--json) or as a
short human-readable line.
"""

import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional, TextIO

from sptree.graph import Graph, NegativeCycle, UpdateOutcome, WeightUpdate

RECORD_FIELDS = (
    'index', 'tail', 'head', 'new_weight', 'direction', 'outcome',
    'affected', 'strongly_affected', 'edges_examined', 'enqueues',
    'removals', 'merges', 'edge_changes', 'elapsed_ms',
)


@dataclass
class UpdateRecord:
    """Stats for one update; vertex ids are 1-based as in the input files."""
    index: int
    tail: int
    head: int
    new_weight: int
    direction: str
    outcome: str
    affected: int
    strongly_affected: int
    edges_examined: int
    enqueues: int
    removals: int
    merges: int
    edge_changes: int
    elapsed_ms: float
    warnings: List[str] = field(default_factory=list)
    witness: Optional[List[str]] = None
    cycle_length: Optional[int] = None


def record_for(
    index: int,
    update: WeightUpdate,
    direction: str,
    outcome: UpdateOutcome,
    elapsed_ms: float,
    graph: Optional[Graph] = None,
) -> UpdateRecord:
    stats = outcome.stats
    record = UpdateRecord(
        index=index,
        tail=update.tail + 1,
        head=update.head + 1,
        new_weight=update.new_weight,
        direction=direction,
        outcome=outcome.kind,
        affected=stats.affected,
        strongly_affected=stats.strongly_affected,
        edges_examined=stats.edges_examined,
        enqueues=stats.enqueues,
        removals=stats.removals,
        merges=stats.merges,
        edge_changes=stats.edge_changes,
        elapsed_ms=round(elapsed_ms, 3),
        warnings=list(stats.warnings),
    )
    if isinstance(outcome, NegativeCycle):
        name = graph.name if graph is not None else (lambda v: str(v + 1))
        record.witness = [name(v) for v in outcome.witness]
        record.cycle_length = outcome.length
    return record


class RecordWriter:
    """Writes UpdateRecords to a text stream."""

    def __init__(self, stream: TextIO, use_json: bool = False):
        self.stream = stream
        self.use_json = use_json

    def write(self, record: UpdateRecord) -> None:
        if self.use_json:
            self.stream.write(json.dumps(asdict(record), default=str) + "\n")
            return
        line = (
            f"[{record.index}] {record.tail}->{record.head} := {record.new_weight} "
            f"{record.direction} {record.outcome} | "
            f"n0={record.affected} ns={record.strongly_affected} "
            f"examined={record.edges_examined} enq={record.enqueues} "
            f"rem={record.removals} merges={record.merges} "
            f"changes={record.edge_changes} {record.elapsed_ms:.3f}ms"
        )
        for warning in record.warnings:
            line += f" ! {warning}"
        self.stream.write(line + "\n")
