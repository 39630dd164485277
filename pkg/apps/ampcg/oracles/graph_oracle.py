from typing import Iterable

from ..models.graph import ChainGraph, GraphLike
from ..models.separation import SeparationQuery
from ..services.separation_service import separated
from .base_oracle import BaseOracle


class GraphOracle(BaseOracle):
    """Faithful oracle: independence is separation in a chain graph.

    Stateless; safe to share between threads.
    """

    def __init__(self, graph: ChainGraph):
        super().__init__(graph.names)
        self.graph = graph

    def query(self, x: Iterable[int], y: Iterable[int], z: Iterable[int] = ()) -> bool:
        return separated(self.graph, SeparationQuery(x=frozenset(x), y=frozenset(y), z=frozenset(z)))


def graph_oracle(graph: GraphLike) -> GraphOracle:
    cg = graph if isinstance(graph, ChainGraph) else ChainGraph.from_graph(graph)
    return GraphOracle(cg)
