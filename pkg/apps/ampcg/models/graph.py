from __future__ import annotations

from enum import Enum
from typing import Any, Iterable, NamedTuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from ..core.exceptions import ErrorCode, GraphError, raise_unknown_node


class EndKind(str, Enum):
    """How an edge meets one of its endpoints"""
    head = "head"
    line = "line"
    tail = "tail"


class EdgeKind(str, Enum):
    """Edge between an ordered pair (u, v), read from u"""
    none = "none"
    forward = "forward"        # u -> v
    backward = "backward"      # u <- v
    undirected = "undirected"  # u -- v


class TriplexKind(str, Enum):
    immorality = "immorality"
    flag = "flag"


class NodeId(NamedTuple):
    index: int
    name: str


Pair = tuple[int, int]


def normalize_pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


class Triplex(BaseModel):
    """({A, C}, B): outer pair plus center"""
    model_config = ConfigDict(frozen=True)

    pair: Pair
    center: int

    @field_validator("pair")
    @classmethod
    def _sorted_pair(cls, v: Pair) -> Pair:
        if v[0] == v[1]:
            raise ValueError("triplex outer nodes must differ")
        return normalize_pair(*v)

    @model_validator(mode="after")
    def _center_outside_pair(self) -> "Triplex":
        if self.center in self.pair:
            raise ValueError("triplex center must not be an outer node")
        return self


class HybridGraph(BaseModel):
    """Nodes 0..n-1 with display names, directed and undirected edges.

    Immutable. Adjacency queries are O(1) through a per-pair edge-kind table
    built once after validation.
    """
    model_config = ConfigDict(frozen=True)

    names: tuple[str, ...]
    directed: frozenset[Pair] = frozenset()
    undirected: frozenset[Pair] = frozenset()

    _kinds: dict[Pair, EdgeKind] = PrivateAttr(default_factory=dict)
    _incidence: tuple[tuple[tuple[int, EndKind, EndKind], ...], ...] = PrivateAttr(default=())
    _index: dict[str, int] = PrivateAttr(default_factory=dict)

    @field_validator("undirected")
    @classmethod
    def _normalize_lines(cls, v: frozenset[Pair]) -> frozenset[Pair]:
        return frozenset(normalize_pair(a, b) for a, b in v)

    @model_validator(mode="after")
    def _check_invariants(self) -> "HybridGraph":
        n = len(self.names)
        if len(set(self.names)) != n:
            raise ValueError("node names must be unique")
        seen: set[Pair] = set()
        for u, v in list(self.directed) + list(self.undirected):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop on node {self.names[u]}")
            key = normalize_pair(u, v)
            if key in seen:
                raise ValueError(f"more than one edge between {self.names[key[0]]} and {self.names[key[1]]}")
            seen.add(key)
        return self

    def model_post_init(self, __context: Any) -> None:
        kinds: dict[Pair, EdgeKind] = {}
        incidence: list[list[tuple[int, EndKind, EndKind]]] = [[] for _ in self.names]
        for u, v in sorted(self.directed):
            kinds[(u, v)] = EdgeKind.forward
            kinds[(v, u)] = EdgeKind.backward
            incidence[u].append((v, EndKind.tail, EndKind.head))
            incidence[v].append((u, EndKind.head, EndKind.tail))
        for u, v in sorted(self.undirected):
            kinds[(u, v)] = kinds[(v, u)] = EdgeKind.undirected
            incidence[u].append((v, EndKind.line, EndKind.line))
            incidence[v].append((u, EndKind.line, EndKind.line))
        self._kinds = kinds
        self._incidence = tuple(tuple(sorted(row)) for row in incidence)
        self._index = {name: i for i, name in enumerate(self.names)}

    # ---------- construction ----------------------------------------------
    @classmethod
    def empty(cls, names: Iterable[str]) -> "HybridGraph":
        return cls(names=tuple(names))

    @classmethod
    def from_edges(
        cls,
        names: Iterable[str],
        directed: Iterable[tuple[str, str]] = (),
        undirected: Iterable[tuple[str, str]] = (),
    ) -> "HybridGraph":
        """Build from node names; edges are given as name pairs"""
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        wanted = {x for pair in [*directed, *undirected] for x in pair}
        missing = wanted - index.keys()
        if missing:
            raise_unknown_node(missing)
        return cls(
            names=names,
            directed=frozenset((index[a], index[b]) for a, b in directed),
            undirected=frozenset((index[a], index[b]) for a, b in undirected),
        )

    # ---------- queries ----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def nodes(self) -> list[NodeId]:
        return [NodeId(i, name) for i, name in enumerate(self.names)]

    def index(self, name: str) -> int:
        if name not in self._index:
            raise_unknown_node([name])
        return self._index[name]

    def indices(self, names: Iterable[str]) -> frozenset[int]:
        names = list(names)
        missing = [x for x in names if x not in self._index]
        if missing:
            raise_unknown_node(missing)
        return frozenset(self._index[x] for x in names)

    def label(self, nodes: Iterable[int]) -> str:
        return "{" + ",".join(self.names[i] for i in sorted(nodes)) + "}"

    def kind(self, u: int, v: int) -> EdgeKind:
        return self._kinds.get((u, v), EdgeKind.none)

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self._kinds

    def has_arrow(self, u: int, v: int) -> bool:
        """True iff u -> v is in the graph"""
        return self._kinds.get((u, v)) is EdgeKind.forward

    def has_line(self, u: int, v: int) -> bool:
        return self._kinds.get((u, v)) is EdgeKind.undirected

    def incidence(self, u: int) -> tuple[tuple[int, EndKind, EndKind], ...]:
        """(neighbor, end kind at u, end kind at neighbor) for every edge at u"""
        return self._incidence[u]

    def adjacents(self, u: int) -> frozenset[int]:
        return frozenset(w for w, _, _ in self._incidence[u])

    def skeleton(self) -> frozenset[Pair]:
        return frozenset(normalize_pair(u, v) for u, v in self.directed) | self.undirected

    def edge_names(self) -> frozenset[str]:
        arrows = {f"{self.names[u]} -> {self.names[v]}" for u, v in self.directed}
        lines = {f"{self.names[u]} -- {self.names[v]}" for u, v in self.undirected}
        return frozenset(arrows | lines)

    def __repr__(self) -> str:
        return f"HybridGraph({self.label(range(self.n))}: {', '.join(sorted(self.edge_names()))})"


# ---------- chain components -----------------------------------------------
def undirected_part(graph: HybridGraph) -> nx.Graph:
    """All nodes, undirected edges only"""
    ug = nx.Graph()
    ug.add_nodes_from(range(graph.n))
    ug.add_edges_from(graph.undirected)
    return ug


def chain_components(graph: HybridGraph) -> list[frozenset[int]]:
    """Undirected connectivity components, ordered by smallest member"""
    return sorted((frozenset(c) for c in nx.connected_components(undirected_part(graph))), key=min)


def component_quotient(graph: HybridGraph) -> tuple[nx.DiGraph, dict[int, int]]:
    """Digraph over component ids with an arc per directed edge (self-loops kept)"""
    components = chain_components(graph)
    comp_of = {v: i for i, comp in enumerate(components) for v in comp}
    quotient = nx.DiGraph()
    quotient.add_nodes_from(range(len(components)))
    quotient.add_edges_from((comp_of[u], comp_of[v]) for u, v in graph.directed)
    return quotient, comp_of


def has_semidirected_cycle(graph: HybridGraph) -> bool:
    # u -> v inside one component closes a descending cycle (self-loop in the quotient)
    quotient, _ = component_quotient(graph)
    return not nx.is_directed_acyclic_graph(quotient)


class ChainGraph(BaseModel):
    """A hybrid graph validated to have no semidirected cycle"""
    model_config = ConfigDict(frozen=True)

    graph: HybridGraph

    @model_validator(mode="after")
    def _no_semidirected_cycle(self) -> "ChainGraph":
        if has_semidirected_cycle(self.graph):
            raise ValueError("graph has a semidirected cycle")
        return self

    @classmethod
    def from_graph(cls, graph: HybridGraph) -> "ChainGraph":
        if has_semidirected_cycle(graph):
            raise GraphError(
                "Graph is not a chain graph: it has a semidirected cycle",
                error_code=ErrorCode.GRAPH_NOT_CHAIN,
                context={"graph": repr(graph)},
            )
        return cls(graph=graph)

    @property
    def names(self) -> tuple[str, ...]:
        return self.graph.names

    @property
    def n(self) -> int:
        return self.graph.n


GraphLike = Union[HybridGraph, ChainGraph]


def as_hybrid(graph: GraphLike) -> HybridGraph:
    return graph.graph if isinstance(graph, ChainGraph) else graph
