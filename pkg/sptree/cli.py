"""
Command-line surface: sptree run | verify | bench | generate.

Exit codes: 0 success, 1 input/config/verification errors, 2 when `run`
meets a negative cycle.
"""

import sys
from pathlib import Path
from typing import NoReturn, Optional

import click

from logcore import get_logger, setup_logging
from sptree import __version__
from sptree.bench import run_bench, summarize, summary_line, write_csv
from sptree.config import DIRECTIONS, LOG_FORMATS, LOG_LEVELS, Scenario, Settings, load_config
from sptree.dimacs import (
    format_path,
    label_index,
    parse_graph,
    parse_updates,
    write_dot,
    write_graph,
    write_tree,
    write_updates,
)
from sptree.errors import InconsistentGraph, SptreeError, VerificationFailed
from sptree.generator import generate, generate_updates
from sptree.graph import Graph, NegativeCycle
from sptree.records import RecordWriter, record_for
from sptree.tracker import SptTracker, direction_of
from sptree.verify import Verifier, verify_generated

log = get_logger(__name__)


def fail(message: str, code: int = 1) -> NoReturn:
    click.echo(click.style(f'❌ {message}', fg='red'), err=True)
    sys.exit(code)


def _pick(flag, configured):
    return configured if flag is None else flag


def _load_inputs(graph_file: str, updates_file: Optional[str], source: int, scale: int):
    try:
        graph = parse_graph(Path(graph_file).read_text(), source=source, scale=scale)
        updates = []
        if updates_file is not None:
            updates = parse_updates(Path(updates_file).read_text(), names=label_index(graph),
                                    scale=scale, vertex_count=graph.vertex_count)
    except OSError as e:
        fail(f'Cannot read input: {e}')
    except SptreeError as e:
        fail(f'Invalid input: {e}')
    log.info("inputs loaded", extra={'context': {
        'graph': graph_file, 'vertices': graph.vertex_count, 'edges': graph.edge_count,
        'updates': len(updates)}})
    return graph, updates


def _initial_tracker(graph: Graph, merge: bool, audit: bool) -> SptTracker:
    try:
        return SptTracker.from_graph(graph, merge=merge, audit=audit)
    except InconsistentGraph as e:
        cycle = format_path(graph, e.witness) if e.witness else ''
        fail(f'Initial graph has a negative cycle: {cycle}', code=2)


@click.group()
@click.version_option(version=__version__)
@click.option('--config', 'config_path', default=None, help='Path to a YAML config file')
@click.option('--log-level', type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help='Log level (default WARNING)')
@click.option('--log-file', default=None, help='Also log to this rotating file')
@click.option('--log-format', type=click.Choice(LOG_FORMATS), default=None, help='Log line format')
@click.pass_context
def cli(ctx, config_path, log_level, log_file, log_format):
    """Dynamic shortest-path tree maintenance"""
    settings = Settings()
    if config_path is not None:
        try:
            settings = load_config(config_path)
        except SptreeError as e:
            fail(f'Invalid config: {e}')
    settings.logging.level = _pick(log_level, settings.logging.level).upper()
    settings.logging.file = _pick(log_file, settings.logging.file)
    settings.logging.format = _pick(log_format, settings.logging.format)
    setup_logging(settings.logging.level, settings.logging.file,
                  use_json=settings.logging.format == 'json')
    ctx.obj = settings


@cli.command()
@click.argument('graph_file')
@click.argument('updates_file')
@click.option('--source', default=1, show_default=True, help='Source vertex (1-based)')
@click.option('--merge/--no-merge', default=None, help='Keep edge changes minimal')
@click.option('--audit/--no-audit', default=None, help='Certify every update')
@click.option('--emit-tree', is_flag=True, help='Print the final tree as t <v> <parent> <dist>')
@click.option('--json', 'as_json', is_flag=True, help='Stat records as JSON lines')
@click.option('--dot', 'dot_path', default=None, help='Write the final tree as Graphviz DOT')
@click.option('--scale', default=1, show_default=True, help='Multiply weights by this factor')
@click.pass_obj
def run(settings, graph_file, updates_file, source, merge, audit, emit_tree, as_json, dot_path, scale):
    """
    Apply an update stream and report per-update stats

    GRAPH_FILE: DIMACS graph (p sp / a lines)
    UPDATES_FILE: one '<tail> <head> <new_weight>' per line
    """
    graph, updates = _load_inputs(graph_file, updates_file, source, scale)
    tracker = _initial_tracker(graph, _pick(merge, settings.engine.merge), _pick(audit, settings.engine.audit))
    writer = RecordWriter(sys.stdout, use_json=as_json)

    for index, update in enumerate(updates, start=1):
        try:
            direction = direction_of(graph, update)
            outcome = tracker.apply(update)
        except SptreeError as e:
            fail(f'Update {index} ({update.tail + 1} {update.head + 1} {update.new_weight}): {e}')
        writer.write(record_for(index, update, direction, outcome, tracker.last_elapsed_ms, graph))
        if isinstance(outcome, NegativeCycle):
            if not as_json:
                click.echo(f'negative cycle: {format_path(graph, outcome.witness)} (length {outcome.length})')
            log.info("stopping at negative cycle", extra={'context': {'index': index}})
            sys.exit(2)

    if emit_tree:
        click.echo(write_tree(tracker.tree), nl=False)
    if dot_path:
        try:
            Path(dot_path).write_text(write_dot(tracker.tree, graph))
        except OSError as e:
            fail(f'Cannot write {dot_path}: {e}')


@cli.command()
@click.argument('graph_file', required=False)
@click.argument('updates_file', required=False)
@click.option('--source', default=1, show_default=True, help='Source vertex (1-based)')
@click.option('--merge/--no-merge', default=None, help='Also check minimal edge changes')
@click.option('--cap', type=int, default=None, help='Enumeration cap for the minimality check')
@click.option('--max-vertices', type=int, default=None, help='Largest n checked for minimality')
@click.option('--scale', default=1, show_default=True, help='Multiply weights by this factor')
@click.option('--seed', type=int, default=None, help='Generated mode: master seed')
@click.option('--instances', default=100, show_default=True, help='Generated mode: instance count')
@click.option('--max-n', default=9, show_default=True, help='Generated mode: largest vertex count')
@click.option('--direction', type=click.Choice(DIRECTIONS), default='either', show_default=True)
@click.option('--allow-inconsistency', is_flag=True, help='Generated mode: unclamped decreases')
@click.pass_obj
def verify(settings, graph_file, updates_file, source, merge, cap, max_vertices, scale,
           seed, instances, max_n, direction, allow_inconsistency):
    """
    Cross-check every update against from-scratch recomputation

    Either GRAPH_FILE and UPDATES_FILE, or --seed for generated instances.
    """
    verifier = Verifier(
        merge=_pick(merge, settings.engine.merge),
        audit=settings.engine.audit,
        cap=_pick(cap, settings.oracle.cap),
        max_vertices=_pick(max_vertices, settings.oracle.max_vertices),
    )
    graph = None
    try:
        if seed is not None:
            if max_n < 2:
                fail(f'--max-n must be at least 2, got {max_n}')
            gen = settings.generator
            report = verify_generated(verifier, seed, instances, max_n, direction, allow_inconsistency,
                                      base_max=gen.base_max, potential_max=gen.potential_max,
                                      strict_positive_base=gen.strict_positive_base)
        elif graph_file and updates_file:
            graph, updates = _load_inputs(graph_file, updates_file, source, scale)
            report = verifier.verify_stream(graph, updates)
        else:
            fail('Give GRAPH_FILE and UPDATES_FILE, or --seed for generated instances')
    except VerificationFailed as e:
        for line in verifier.report.lines():
            click.echo(line)
        where = ''
        if e.vertex is not None:
            where = f' at vertex {graph.name(e.vertex) if graph is not None else e.vertex + 1}'
        fail(f'FAIL{where}: {e.detail}')
    except SptreeError as e:
        fail(str(e))

    for line in report.lines():
        click.echo(line)
    click.echo(click.style('PASS', fg='green'))


@cli.command()
@click.option('--n', type=int, default=None, help='Vertices (omit to run config scenarios)')
@click.option('--m', type=int, default=None, help='Edges')
@click.option('--seed', default=1, show_default=True)
@click.option('--updates', default=100, show_default=True, help='Updates per scenario')
@click.option('--direction', type=click.Choice(DIRECTIONS), default='either', show_default=True)
@click.option('--allow-inconsistency', is_flag=True, help='Unclamped decreases')
@click.option('--jobs', type=int, default=None, help='Scenarios run in parallel')
@click.option('--scratch/--no-scratch', default=None, help='Time Bellman-Ford after every update')
@click.option('--merge/--no-merge', default=None)
@click.pass_obj
def bench(settings, n, m, seed, updates, direction, allow_inconsistency, jobs, scratch, merge):
    """Benchmark dynamic updates against recomputation; CSV on stdout"""
    gen = settings.generator
    if n is not None:
        scenarios = [Scenario(n=n, m=m if m is not None else 5 * n, seed=seed, updates=updates,
                              direction=direction, allow_inconsistency=allow_inconsistency,
                              base_max=gen.base_max, potential_max=gen.potential_max)]
    else:
        scenarios = settings.bench.scenarios
    if not scenarios:
        fail('Nothing to run: pass --n/--m or list bench.scenarios in the config')

    try:
        rows = run_bench(
            scenarios,
            jobs=_pick(jobs, settings.bench.jobs),
            scratch=_pick(scratch, settings.bench.scratch),
            merge=_pick(merge, settings.engine.merge),
            strict_positive_base=gen.strict_positive_base,
        )
    except SptreeError as e:
        fail(str(e))
    write_csv(rows, sys.stdout)
    summary = summarize(rows)
    click.echo(summary_line(summary), err=True)
    log.info("bench summary", extra={'context': summary})


@cli.command(name='generate')
@click.option('--n', type=int, required=True, help='Vertices')
@click.option('--m', type=int, required=True, help='Edges')
@click.option('--seed', default=1, show_default=True)
@click.option('--updates', default=0, show_default=True, help='Updates to generate')
@click.option('--direction', type=click.Choice(DIRECTIONS), default='either', show_default=True)
@click.option('--allow-inconsistency', is_flag=True, help='Unclamped decreases')
@click.option('--base-max', type=int, default=None)
@click.option('--potential-max', type=int, default=None)
@click.option('--strict-positive/--no-strict-positive', default=None,
              help='Base costs >= 1, which rules out 0-cycles')
@click.option('--out', 'graph_out', required=True, help='Graph file to write')
@click.option('--updates-out', default=None, help='Update file (stdout when omitted)')
@click.pass_obj
def generate_cmd(settings, n, m, seed, updates, direction, allow_inconsistency, base_max,
                 potential_max, strict_positive, graph_out, updates_out):
    """Write a generated graph and update stream"""
    gen = settings.generator
    try:
        graph = generate(n, m, seed,
                         base_max=_pick(base_max, gen.base_max),
                         potential_max=_pick(potential_max, gen.potential_max),
                         strict_positive_base=_pick(strict_positive, gen.strict_positive_base))
        stream = generate_updates(graph, seed + 1, updates, direction, allow_inconsistency)
    except SptreeError as e:
        fail(str(e))

    try:
        Path(graph_out).write_text(write_graph(graph, comment=f'generated n={n} m={m} seed={seed}'))
        if updates_out:
            Path(updates_out).write_text(write_updates(stream))
        elif stream:
            click.echo(write_updates(stream), nl=False)
    except OSError as e:
        fail(f'Cannot write output: {e}')
    log.info("instance written", extra={'context': {'graph': graph_out, 'updates': len(stream)}})


def main():
    cli()


if __name__ == '__main__':
    main()
