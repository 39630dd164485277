"""Block-placement rules run by the learner after the skeleton phase.

Each rule inspects the marked graph and the recorded separators and proposes
edge ends to block. Blocks are never removed, so the engine reaches the same
least fixpoint whatever order the rules fire in.
"""

from abc import ABC, abstractmethod
from itertools import combinations, permutations
from typing import Optional, Sequence

import networkx as nx
import numpy as np
import structlog

from ..models.graph import Pair
from ..models.marks import MarkedGraph, SeparatorMap

log = structlog.get_logger(__name__)


class BlockRule(ABC):
    """Base class for all block rules"""

    name: str = "rule"

    @abstractmethod
    def candidates(self, marked: MarkedGraph, separators: SeparatorMap) -> list[Pair]:
        """Ends (at, other) this rule would block now; already-blocked ends are excluded"""

    def _fresh(self, marked: MarkedGraph, ends: list[Pair]) -> list[Pair]:
        return sorted({end for end in ends if not marked.is_blocked(*end)})


class UnshieldedColliderRule(BlockRule):
    """A − B − C, A and C non-adjacent, B ∉ S_AC: block the A-end and the C-end"""

    name = "R1"

    def candidates(self, marked: MarkedGraph, separators: SeparatorMap) -> list[Pair]:
        ends = []
        for b in range(marked.n):
            for a, c in combinations(sorted(marked.neighbors(b)), 2):
                if marked.adjacent(a, c):
                    continue
                sep = separators.get(a, c)
                if sep is None or b in sep:
                    continue
                ends += [(a, b), (c, b)]
        return self._fresh(marked, ends)


class PropagationRule(BlockRule):
    """A ⊣ B − C, A and C non-adjacent, B ∈ S_AC: block the B-end of B − C"""

    name = "R2"

    def candidates(self, marked: MarkedGraph, separators: SeparatorMap) -> list[Pair]:
        ends = []
        for b in range(marked.n):
            for a, c in permutations(sorted(marked.neighbors(b)), 2):
                if not marked.is_blocked(a, b) or marked.adjacent(a, c):
                    continue
                sep = separators.get(a, c)
                if sep is not None and b in sep:
                    ends.append((b, c))
        return self._fresh(marked, ends)


class BlockedPathRule(BlockRule):
    """A − B with a chain of blocked ends leading from A to B: block the A-end"""

    name = "R3"

    def candidates(self, marked: MarkedGraph, separators: SeparatorMap) -> list[Pair]:
        aux = nx.DiGraph()
        aux.add_nodes_from(range(marked.n))
        aux.add_edges_from(marked.blocks())
        ends = [
            (a, b)
            for a, b in marked.marks
            if not marked.is_blocked(a, b) and nx.has_path(aux, a, b)
        ]
        return self._fresh(marked, ends)


class DoubleColliderRule(BlockRule):
    """A adjacent to B, C, D; C ⊣ B and D ⊣ B; C, D non-adjacent; A ∈ S_CD, B ∉ S_CD: block the A-end of A − B"""

    name = "R4"

    def candidates(self, marked: MarkedGraph, separators: SeparatorMap) -> list[Pair]:
        ends = []
        for a in range(marked.n):
            nbrs = sorted(marked.neighbors(a))
            for b in nbrs:
                into_b = [
                    w for w in nbrs
                    if w != b and marked.adjacent(w, b) and marked.is_blocked(w, b)
                ]
                for c, d in combinations(into_b, 2):
                    if marked.adjacent(c, d):
                        continue
                    sep = separators.get(c, d)
                    if sep is not None and a in sep and b not in sep:
                        ends.append((a, b))
                        break
        return self._fresh(marked, ends)


DEFAULT_RULES: tuple[BlockRule, ...] = (
    UnshieldedColliderRule(),
    PropagationRule(),
    BlockedPathRule(),
    DoubleColliderRule(),
)


class RuleEngine:
    """Runs the rules to their fixpoint.

    Without an rng the rules fire in sweeps R1..R4, each applying all of its
    current candidates, until a sweep changes nothing. With an rng a single
    block is drawn at random among all rules' candidates at every step.
    """

    def __init__(self, rules: Sequence[BlockRule] = DEFAULT_RULES, rng: Optional[np.random.Generator] = None):
        self.rules = tuple(rules)
        self.rng = rng

    def run(self, marked: MarkedGraph, separators: SeparatorMap) -> MarkedGraph:
        if self.rng is None:
            self._sweep(marked, separators)
        else:
            self._random_walk(marked, separators)
        log.debug("rules_fixpoint", blocks=len(marked.blocks()), firings=len(marked.history))
        return marked

    def _sweep(self, marked: MarkedGraph, separators: SeparatorMap) -> None:
        changed = True
        while changed:
            changed = False
            for rule in self.rules:
                for at, other in rule.candidates(marked, separators):
                    changed |= marked.block(at, other, rule.name)

    def _random_walk(self, marked: MarkedGraph, separators: SeparatorMap) -> None:
        while True:
            pending = [(rule, end) for rule in self.rules for end in rule.candidates(marked, separators)]
            if not pending:
                return
            rule, (at, other) = pending[int(self.rng.integers(len(pending)))]
            marked.block(at, other, rule.name)


def apply_rules(
    marked: MarkedGraph,
    separators: SeparatorMap,
    rng: Optional[np.random.Generator] = None,
) -> MarkedGraph:
    """Return a copy of `marked` closed under the rules; the input is left untouched"""
    return RuleEngine(rng=rng).run(marked.model_copy(deep=True), separators)
