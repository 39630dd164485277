"""AMP separation: X ⊥ Y | Z iff no Z-open route joins X and Y.

Routes may repeat nodes and edges, so plain path search is not enough. The
engine runs a reachability search over states (node, end kind of the edge the
route arrived through); whether a route may pass an interior node depends only
on that state, the end kind it leaves through, and membership of the node in Z.
"""

from collections import deque
from itertools import product
from typing import Iterable, Sequence

import structlog

from ..core.config import settings
from ..core.exceptions import raise_guard_exceeded
from ..models.graph import EdgeKind, EndKind, GraphLike, HybridGraph, as_hybrid
from ..models.separation import SeparationQuery, Statement, canonical_statement, is_head_no_tail

log = structlog.get_logger(__name__)


def _connected(g: HybridGraph, xs: frozenset[int], ys: frozenset[int], zs: frozenset[int]) -> bool:
    """True iff some Z-open route joins X and Y (multi-source over all of X)"""
    visited: set[tuple[int, EndKind]] = set()
    queue: deque[tuple[int, EndKind]] = deque()

    # route endpoints carry no condition: X, Y, Z are disjoint
    for x in xs:
        for w, _, at_w in g.incidence(x):
            if w in ys:
                return True
            if (w, at_w) not in visited:
                visited.add((w, at_w))
                queue.append((w, at_w))

    while queue:
        b, k_in = queue.popleft()
        in_z = b in zs
        for c, k_out, at_c in g.incidence(b):
            if is_head_no_tail(k_in, k_out) != in_z:
                continue
            if c in ys:
                return True
            if (c, at_c) not in visited:
                visited.add((c, at_c))
                queue.append((c, at_c))
    return False


def separated(graph: GraphLike, query: SeparationQuery) -> bool:
    g = as_hybrid(graph)
    query.check_nodes(g.n)
    return not _connected(g, query.x, query.y, query.z)


def separated_sets(graph: GraphLike, x: Iterable[int], y: Iterable[int], z: Iterable[int] = ()) -> bool:
    return separated(graph, SeparationQuery(x=frozenset(x), y=frozenset(y), z=frozenset(z)))


# ---------- route-enumeration oracle ---------------------------------------
def _is_head_no_tail_at(g: HybridGraph, a: int, b: int, c: int) -> bool:
    """b is head-no-tail in the subroute a, b, c: a -> b <- c, a -> b -- c or a -- b <- c"""
    into_from_a, into_from_c = g.has_arrow(a, b), g.has_arrow(c, b)
    line_a, line_c = g.has_line(a, b), g.has_line(c, b)
    return (into_from_a and into_from_c) or (into_from_a and line_c) or (line_a and into_from_c)


def _interior_ok(g: HybridGraph, a: int, b: int, c: int, zs: frozenset[int]) -> bool:
    return _is_head_no_tail_at(g, a, b, c) == (b in zs)


def is_z_open(graph: GraphLike, route: Sequence[int], z: Iterable[int]) -> bool:
    """Check a route against the definition of Z-openness"""
    g, zs = as_hybrid(graph), frozenset(z)
    if not route:
        return False
    if any(not g.adjacent(u, v) for u, v in zip(route, route[1:])):
        return False
    if route[0] in zs or route[-1] in zs:
        return False
    return all(_interior_ok(g, route[i - 1], route[i], route[i + 1], zs) for i in range(1, len(route) - 1))


def _end_at(g: HybridGraph, node: int, other: int) -> EndKind:
    kind = g.kind(node, other)
    if kind is EdgeKind.forward:
        return EndKind.tail
    if kind is EdgeKind.backward:
        return EndKind.head
    return EndKind.line


def separated_bruteforce(graph: GraphLike, query: SeparationQuery) -> bool:
    """Route enumeration straight from the definition (small graphs only).

    Routes hold at most 3|V| + 1 node slots. If a Z-open route enters the same
    node through the same end kind twice, cutting out the loop between the two
    visits leaves a Z-open route: the condition at that node depends only on the
    entry and exit end kinds and on Z. A shortest Z-open route therefore never
    repeats a (node, entry end kind) state, which bounds its interior by 3|V|.
    The search prunes such repeats and any prefix whose last interior node
    already violates Z-openness.
    """
    g = as_hybrid(graph)
    query.check_nodes(g.n)
    if g.n > settings.bruteforce_max_nodes:
        raise_guard_exceeded("separated_bruteforce", g.n, settings.bruteforce_max_nodes)

    max_slots = 3 * g.n + 1
    xs, ys, zs = query.x, query.y, query.z

    def extend(route: list[int], states: set[tuple[int, EndKind]]) -> bool:
        last = route[-1]
        for nxt in sorted(g.adjacents(last)):
            state = (nxt, _end_at(g, nxt, last))
            if state in states:
                continue
            if len(route) >= 2 and not _interior_ok(g, route[-2], last, nxt, zs):
                continue
            candidate = route + [nxt]
            if nxt in ys and is_z_open(g, candidate, zs):
                return True
            if len(candidate) < max_slots:
                states.add(state)
                found = extend(candidate, states)
                states.discard(state)
                if found:
                    return True
        return False

    return not any(extend([x], set()) for x in sorted(xs))


# ---------- independence models --------------------------------------------
def independence_model(graph: GraphLike) -> frozenset[Statement]:
    """Every X ⊥ Y | Z with X, Y non-empty, Z ⊆ V \\ (X ∪ Y); one entry per symmetric pair"""
    g = as_hybrid(graph)
    if g.n > settings.independence_model_max_nodes:
        raise_guard_exceeded("independence_model", g.n, settings.independence_model_max_nodes)

    statements = set()
    for roles in product(range(4), repeat=g.n):  # 0 none, 1 X, 2 Y, 3 Z
        xs = tuple(v for v, r in enumerate(roles) if r == 1)
        ys = tuple(v for v, r in enumerate(roles) if r == 2)
        if not xs or not ys or ys < xs:
            continue
        zs = frozenset(v for v, r in enumerate(roles) if r == 3)
        if not _connected(g, frozenset(xs), frozenset(ys), zs):
            statements.add((xs, ys, tuple(sorted(zs))))
    log.debug("independence_model_built", n_nodes=g.n, statements=len(statements))
    return frozenset(statements)


def in_model(model: frozenset[Statement], x: Iterable[int], y: Iterable[int], z: Iterable[int]) -> bool:
    return canonical_statement(x, y, z) in model


def format_statement(graph: GraphLike, statement: Statement) -> str:
    g = as_hybrid(graph)
    x, y, z = statement
    return f"{g.label(x)} ⊥ {g.label(y)} | {g.label(z)}"
