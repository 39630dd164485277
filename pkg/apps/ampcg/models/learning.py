from __future__ import annotations

from collections import Counter
from typing import Optional

from pydantic import BaseModel

from .graph import ChainGraph, HybridGraph, Pair
from .marks import MarkedGraph, SeparatorMap


class LearningResult(BaseModel):
    """Learner output plus the validity report.

    A non-faithful oracle may yield a graph with a semidirected cycle; it is
    still returned, with `is_chain_graph` False.
    """

    graph: HybridGraph
    is_chain_graph: bool
    marks: MarkedGraph
    separators: SeparatorMap

    @property
    def skeleton(self) -> frozenset[Pair]:
        return self.marks.skeleton()

    @property
    def chain_graph(self) -> Optional[ChainGraph]:
        return ChainGraph(graph=self.graph) if self.is_chain_graph else None

    @property
    def doubly_blocked(self) -> list[Pair]:
        return self.marks.doubly_blocked()

    @property
    def rule_firings(self) -> dict[str, int]:
        return dict(Counter(event.rule for event in self.marks.history))

    def issues(self) -> list[str]:
        problems = []
        if not self.is_chain_graph:
            problems.append("output has a semidirected cycle (oracle is not faithful to any chain graph)")
        return problems
