"""Chain-graph learner: adjacency phase, block rules, orientation.

Phase 1 starts from the complete undirected graph and removes A − B as soon
as some S of size l drawn from the nodes within two steps of A separates A
and B; l grows until no adjacent pair has enough candidates. Phase 2 closes
the marks under the block rules, phase 3 reads the edges off the marks.
"""

from itertools import combinations
from typing import Iterable, Optional

import numpy as np
import structlog

from ..core.exceptions import AmpCgError, ErrorCode, ErrorContext
from ..core.logging_config import log_learning_event
from ..models.graph import HybridGraph, normalize_pair
from ..models.learning import LearningResult
from ..models.marks import MarkedGraph, SeparatorMap
from ..oracles.base_oracle import BaseOracle
from .graph_service import is_chain_graph
from .rules import apply_rules

log = structlog.get_logger(__name__)


def _candidates(adj: list[set[int]], a: int, b: int) -> frozenset[int]:
    """(ad(A) ∪ ad(ad(A))) minus A and B"""
    reach = set(adj[a])
    for w in adj[a]:
        reach |= adj[w]
    return frozenset(reach - {a, b})


def learn_skeleton(oracle: BaseOracle, names: Iterable[str]) -> tuple[MarkedGraph, SeparatorMap]:
    names = tuple(names)
    n = len(names)
    adj: list[set[int]] = [set(range(n)) - {v} for v in range(n)]
    separators = SeparatorMap()

    size = 0
    while True:
        qualifying = True
        removed = True
        while removed:
            removed = False
            qualifying = False
            for a in range(n):
                for b in range(n):
                    if b not in adj[a]:
                        continue
                    candidates = _candidates(adj, a, b)
                    if len(candidates) < size:
                        continue
                    qualifying = True
                    for subset in combinations(sorted(candidates), size):
                        if oracle.independent(a, b, subset):
                            if len(subset) != size or not candidates.issuperset(subset):
                                raise AmpCgError(
                                    "separator drawn outside the candidate set",
                                    error_code=ErrorCode.INTERNAL_ERROR,
                                    context={"pair": [a, b], "separator": list(subset)},
                                )
                            separators.record(a, b, subset)
                            adj[a].discard(b)
                            adj[b].discard(a)
                            removed = True
                            log.debug("edge_removed", a=names[a], b=names[b], separator=[names[v] for v in subset])
                            break
        if not qualifying:
            break
        size += 1

    skeleton = sorted({normalize_pair(u, v) for u in range(n) for v in adj[u]})
    log_learning_event("skeleton_learned", n, edges=len(skeleton), separators=len(separators), max_size=size)
    return MarkedGraph.from_skeleton(names, skeleton), separators


def orient(marked: MarkedGraph) -> HybridGraph:
    """Blocked at exactly the u-end: u -> v. Otherwise undirected."""
    directed, undirected = set(), set()
    for u, v in marked.skeleton():
        at_u, at_v = marked.is_blocked(u, v), marked.is_blocked(v, u)
        if at_u and not at_v:
            directed.add((u, v))
        elif at_v and not at_u:
            directed.add((v, u))
        else:
            undirected.add((u, v))
    return HybridGraph(names=marked.names, directed=frozenset(directed), undirected=frozenset(undirected))


def learn(
    oracle: BaseOracle,
    names: Optional[Iterable[str]] = None,
    rng: Optional[np.random.Generator] = None,
) -> LearningResult:
    """Run the three phases; a graph with a semidirected cycle comes back flagged, not raised"""
    names = tuple(oracle.names if names is None else names)
    with ErrorContext("learn", n_nodes=len(names)):
        skeleton, separators = learn_skeleton(oracle, names)
        marked = apply_rules(skeleton, separators, rng=rng)
        log_learning_event("rules_fixpoint", len(names), blocks=len(marked.blocks()))
        graph = orient(marked)
        valid = is_chain_graph(graph)
        result = LearningResult(graph=graph, is_chain_graph=valid, marks=marked, separators=separators)
        if not valid:
            log.warning("learned_graph_not_chain", doubly_blocked=result.doubly_blocked)
        log_learning_event("graph_oriented", len(names), is_chain_graph=valid, edges=len(graph.skeleton()))
    return result
