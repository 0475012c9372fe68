"""
Seeded random instances that are guaranteed consistent.

Each edge weight is w(u, v) = c(u, v) - phi(u) + phi(v) with a base cost
c >= 0 and a random potential phi. Under phi every reduced cost equals c, so
no cycle is negative; with strictly positive base costs no cycle has weight
zero either. The potentials are kept on the graph so that decreases can be
clamped to keep that certificate valid.
"""

import random
from typing import List, Optional, Set, Tuple

from logcore import get_logger
from sptree.errors import InfeasibleParams
from sptree.graph import Graph, WeightUpdate, build_graph, set_weight

log = get_logger(__name__)

DIRECTIONS = ('increase', 'decrease', 'either')
# rejection sampling is used while the graph is at most this dense
SPARSE_FILL = 0.5


def generate(
    n: int,
    m: int,
    seed: int,
    base_max: int = 100,
    potential_max: int = 50,
    strict_positive_base: bool = True,
    source: int = 0,
) -> Graph:
    """
    Random graph on n vertices and m edges, reachable from source.

    Raises:
        InfeasibleParams
    """
    if n < 1:
        raise InfeasibleParams(f"need at least one vertex, got n={n}")
    if not n - 1 <= m <= n * (n - 1):
        raise InfeasibleParams(f"m={m} outside [{n - 1}, {n * (n - 1)}] for n={n}")
    low = 1 if strict_positive_base else 0
    if base_max < low:
        raise InfeasibleParams(f"base_max={base_max} below {low}")
    if potential_max < 0:
        raise InfeasibleParams(f"potential_max={potential_max} is negative")
    if not 0 <= source < n:
        raise InfeasibleParams(f"source {source} outside [0, {n})")

    rng = random.Random(seed)
    phi = [rng.randint(-potential_max, potential_max) for _ in range(n)]

    pairs: List[Tuple[int, int]] = []
    taken: Set[Tuple[int, int]] = set()

    # random arborescence from the source
    order = [v for v in range(n) if v != source]
    rng.shuffle(order)
    order.insert(0, source)
    for i in range(1, n):
        pair = (order[rng.randrange(i)], order[i])
        pairs.append(pair)
        taken.add(pair)

    extra = m - (n - 1)
    if extra and m <= SPARSE_FILL * n * (n - 1):
        while extra:
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v or (u, v) in taken:
                continue
            pairs.append((u, v))
            taken.add((u, v))
            extra -= 1
    elif extra:
        free = [(u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in taken]
        rng.shuffle(free)
        pairs.extend(free[:extra])

    arcs = [(u, v, rng.randint(low, base_max) - phi[u] + phi[v]) for u, v in pairs]
    graph = build_graph(n, source, arcs)
    graph.potentials = phi
    return graph


def generate_update(
    graph: Graph,
    seed: int,
    direction: str = 'either',
    allow_inconsistency: bool = False,
    step_max: int = 100,
) -> WeightUpdate:
    """
    Random edge and a new weight moving in the requested direction.

    Unless allow_inconsistency is set, a decrease never pushes an edge's
    reduced cost under the stored potentials below zero. When no edge has
    room to decrease, an increase is returned instead (and logged).
    """
    if direction not in DIRECTIONS:
        raise InfeasibleParams(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    if graph.edge_count == 0:
        raise InfeasibleParams("graph has no edges")
    if step_max < 1:
        raise InfeasibleParams(f"step_max={step_max} must be positive")

    rng = random.Random(seed)
    if direction == 'either':
        direction = rng.choice(('increase', 'decrease'))

    if direction == 'decrease':
        update = _decrease(graph, rng, allow_inconsistency, step_max)
        if update is not None:
            return update
        log.warning("no edge can decrease without breaking the potential certificate; increasing instead")

    eid = rng.randrange(graph.edge_count)
    return WeightUpdate(
        graph.tails[eid], graph.heads[eid], graph.weights[eid] + rng.randint(1, step_max)
    )


def _decrease(graph: Graph, rng: random.Random, allow_inconsistency: bool, step_max: int) -> Optional[WeightUpdate]:
    phi = graph.potentials
    if allow_inconsistency or phi is None:
        if phi is None and not allow_inconsistency:
            log.debug("graph carries no potentials; decrease is unclamped")
        eid = rng.randrange(graph.edge_count)
        return WeightUpdate(
            graph.tails[eid], graph.heads[eid], graph.weights[eid] - rng.randint(1, step_max)
        )

    def slack(eid: int) -> int:
        u, v = graph.tails[eid], graph.heads[eid]
        return phi[u] + graph.weights[eid] - phi[v]

    chosen = None
    for _ in range(2 * graph.edge_count):
        eid = rng.randrange(graph.edge_count)
        if slack(eid) > 0:
            chosen = eid
            break
    if chosen is None:
        roomy = [eid for eid in range(graph.edge_count) if slack(eid) > 0]
        if not roomy:
            return None
        chosen = rng.choice(roomy)

    step = rng.randint(1, min(step_max, slack(chosen)))
    return WeightUpdate(graph.tails[chosen], graph.heads[chosen], graph.weights[chosen] - step)


def generate_updates(
    graph: Graph,
    seed: int,
    count: int,
    direction: str = 'either',
    allow_inconsistency: bool = False,
    step_max: int = 100,
) -> List[WeightUpdate]:
    """A stream of updates, each drawn against the weights left by the previous ones."""
    working = graph.copy()
    rng = random.Random(seed)
    updates = []
    for _ in range(count):
        update = generate_update(working, rng.getrandbits(63), direction, allow_inconsistency, step_max)
        set_weight(working, update)
        updates.append(update)
    return updates
