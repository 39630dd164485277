"""Boundary queries, triplexes and triplex equivalence on hybrid graphs."""

from enum import Enum
from itertools import combinations
from typing import Iterable, Optional

import networkx as nx

from ..core.exceptions import ErrorCode, GraphError
from ..models.graph import (
    EdgeKind,
    GraphLike,
    HybridGraph,
    Triplex,
    TriplexKind,
    as_hybrid,
    chain_components,
    component_quotient,
    has_semidirected_cycle,
    undirected_part,
)


class Boundary(str, Enum):
    pa = "pa"
    ne = "ne"
    ad = "ad"
    de = "de"
    co = "co"


def is_chain_graph(graph: GraphLike) -> bool:
    return not has_semidirected_cycle(as_hybrid(graph))


# ---------- boundary sets --------------------------------------------------
def parents(graph: GraphLike, nodes: Iterable[int]) -> frozenset[int]:
    g, xs = as_hybrid(graph), frozenset(nodes)
    return frozenset(u for u, v in g.directed if v in xs and u not in xs)


def neighbors(graph: GraphLike, nodes: Iterable[int]) -> frozenset[int]:
    g, xs = as_hybrid(graph), frozenset(nodes)
    out = set()
    for u, v in g.undirected:
        if u in xs and v not in xs:
            out.add(v)
        elif v in xs and u not in xs:
            out.add(u)
    return frozenset(out)


def adjacents(graph: GraphLike, nodes: Iterable[int]) -> frozenset[int]:
    g, xs = as_hybrid(graph), frozenset(nodes)
    return frozenset(w for x in xs for w in g.adjacents(x)) - xs


def descending_digraph(graph: GraphLike) -> nx.DiGraph:
    """Arc u -> v for every u -> v, both arcs for every u -- v"""
    g = as_hybrid(graph)
    dg = nx.DiGraph()
    dg.add_nodes_from(range(g.n))
    dg.add_edges_from(g.directed)
    dg.add_edges_from(g.undirected)
    dg.add_edges_from((v, u) for u, v in g.undirected)
    return dg


def descendants(graph: GraphLike, nodes: Iterable[int]) -> frozenset[int]:
    """Ends of descending routes leaving X"""
    xs = frozenset(nodes)
    dg = descending_digraph(graph)
    reached: set[int] = set()
    for x in xs:
        reached |= nx.descendants(dg, x)
    return frozenset(reached - xs)


def connectivity_component(graph: GraphLike, node: int) -> frozenset[int]:
    """co(A): nodes reachable from A along undirected edges, A included"""
    return frozenset(nx.node_connected_component(undirected_part(as_hybrid(graph)), node))


def boundary(graph: GraphLike, nodes: Iterable[int], kind: Boundary) -> frozenset[int]:
    xs = frozenset(nodes)
    if kind is Boundary.co:
        if len(xs) != 1:
            raise GraphError(
                "co() is defined for a single node",
                error_code=ErrorCode.GRAPH_NODE_MISMATCH,
                context={"nodes": sorted(xs)},
            )
        return connectivity_component(graph, next(iter(xs)))
    return {
        Boundary.pa: parents,
        Boundary.ne: neighbors,
        Boundary.ad: adjacents,
        Boundary.de: descendants,
    }[kind](graph, xs)


def component_order(graph: GraphLike) -> list[frozenset[int]]:
    """Chain components in a deterministic topological order (graph must be a CG)"""
    g = as_hybrid(graph)
    if has_semidirected_cycle(g):
        raise GraphError("component order needs a chain graph", error_code=ErrorCode.GRAPH_NOT_CHAIN)
    components = chain_components(g)
    quotient, _ = component_quotient(g)
    return [components[i] for i in nx.lexicographical_topological_sort(quotient)]


# ---------- triplexes ------------------------------------------------------
_INTO_CENTER = (EdgeKind.forward, EdgeKind.undirected)


def triplex_kind(graph: GraphLike, a: int, b: int, c: int) -> Optional[TriplexKind]:
    """Kind of the triplex ({a, c}, b) in the graph, or None when absent"""
    g = as_hybrid(graph)
    if a == c or b in (a, c) or g.adjacent(a, c):
        return None
    ka, kc = g.kind(a, b), g.kind(c, b)
    if ka not in _INTO_CENTER or kc not in _INTO_CENTER:
        return None
    if ka is EdgeKind.forward and kc is EdgeKind.forward:
        return TriplexKind.immorality
    if ka is EdgeKind.forward or kc is EdgeKind.forward:
        return TriplexKind.flag
    return None


def _triplexes_with_kind(g: HybridGraph):
    for b in range(g.n):
        for a, c in combinations(sorted(g.adjacents(b)), 2):
            kind = triplex_kind(g, a, b, c)
            if kind is not None:
                yield a, b, c, kind


def triplexes(graph: GraphLike) -> frozenset[Triplex]:
    g = as_hybrid(graph)
    return frozenset(Triplex(pair=(a, c), center=b) for a, b, c, _ in _triplexes_with_kind(g))


def immoralities(graph: GraphLike) -> frozenset[Triplex]:
    g = as_hybrid(graph)
    return frozenset(
        Triplex(pair=(a, c), center=b)
        for a, b, c, kind in _triplexes_with_kind(g)
        if kind is TriplexKind.immorality
    )


def flags(graph: GraphLike) -> frozenset[Triplex]:
    g = as_hybrid(graph)
    return frozenset(
        Triplex(pair=(a, c), center=b)
        for a, b, c, kind in _triplexes_with_kind(g)
        if kind is TriplexKind.flag
    )


def flag_shapes(graph: GraphLike) -> frozenset[tuple[int, int, int]]:
    """Oriented flags (a, b, c) for each induced a -> b -- c"""
    g = as_hybrid(graph)
    shapes = set()
    for a, b, c, kind in _triplexes_with_kind(g):
        if kind is TriplexKind.flag:
            shapes.add((a, b, c) if g.has_arrow(a, b) else (c, b, a))
    return frozenset(shapes)


def _same_nodes(g1: HybridGraph, g2: HybridGraph) -> None:
    if g1.names != g2.names:
        raise GraphError(
            "graphs are over different node sets",
            error_code=ErrorCode.GRAPH_NODE_MISMATCH,
            context={"left": list(g1.names), "right": list(g2.names)},
        )


def triplex_equivalent(first: GraphLike, second: GraphLike) -> bool:
    g1, g2 = as_hybrid(first), as_hybrid(second)
    _same_nodes(g1, g2)
    return g1.skeleton() == g2.skeleton() and triplexes(g1) == triplexes(g2)


def equivalence_signature(graph: GraphLike) -> tuple[frozenset, frozenset]:
    """Key shared by exactly the triplex-equivalent graphs over one node set"""
    g = as_hybrid(graph)
    return g.skeleton(), triplexes(g)


def induced_subgraph(graph: GraphLike, nodes: Iterable[int]) -> HybridGraph:
    """Subgraph over X (re-indexed in index order), keeping edges with both ends in X"""
    g = as_hybrid(graph)
    keep = sorted(set(nodes))
    outside = [v for v in keep if not 0 <= v < g.n]
    if outside:
        raise GraphError(f"nodes {outside} are not in the graph", error_code=ErrorCode.GRAPH_UNKNOWN_NODE)
    new_index = {v: i for i, v in enumerate(keep)}
    return HybridGraph(
        names=tuple(g.names[v] for v in keep),
        directed=frozenset((new_index[u], new_index[v]) for u, v in g.directed if u in new_index and v in new_index),
        undirected=frozenset((new_index[u], new_index[v]) for u, v in g.undirected if u in new_index and v in new_index),
    )
