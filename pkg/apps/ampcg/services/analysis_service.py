"""Verification helpers: Markov conditions, exhaustive enumeration, fixtures.

Everything here is a pure function of its inputs and returns either a bool or
a VerificationReport whose failed checks carry a concrete witness.
"""

from collections import defaultdict
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
import structlog

from ..core.config import settings
from ..core.exceptions import raise_guard_exceeded
from ..core.logging_config import log_verification_result
from ..models.graph import ChainGraph, EdgeKind, GraphLike, HybridGraph, as_hybrid
from ..models.learning import LearningResult
from ..models.report import VerificationReport
from ..models.separation import Statement, canonical_statement
from ..oracles.base_oracle import BaseOracle
from ..oracles.graph_oracle import graph_oracle
from .graph_service import (
    connectivity_component,
    descendants,
    equivalence_signature,
    flag_shapes,
    immoralities,
    is_chain_graph,
    neighbors,
    parents,
    triplex_equivalent,
    triplexes,
)
from .learner_service import learn
from .separation_service import format_statement, independence_model

log = structlog.get_logger(__name__)

MEEK_F_EDGES = {"directed": [("A", "D"), ("B", "E")], "undirected": [("C", "D"), ("D", "E")]}
MEEK_H_EDGES = {"directed": [("A", "D")], "undirected": [("B", "E"), ("C", "D"), ("D", "E"), ("B", "D")]}
DEFLAGGED_G_EDGES = {"directed": [("A", "C"), ("B", "D"), ("B", "E")], "undirected": [("C", "D"), ("D", "E")]}
DEFLAGGED_H_EDGES = {"directed": [("A", "C"), ("B", "D"), ("B", "E"), ("D", "E")], "undirected": [("C", "D")]}
FIXTURE_NAMES = ("A", "B", "C", "D", "E")


def default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("A") + i) for i in range(n))
    return tuple(f"V{i}" for i in range(n))


def _witness(g: HybridGraph, x: Iterable[int], y: Iterable[int], z: Iterable[int]) -> str:
    return format_statement(g, canonical_statement(x, y, z))


# ---------- Markov conditions ----------------------------------------------
def check_c1_c2(oracle: BaseOracle, graph: ChainGraph, pairwise: bool = False) -> VerificationReport:
    """Local conditions, per node A:

    C1: A ⊥ co(A) \\ A \\ ne(A) | pa(A ∪ ne(A)) ∪ ne(A)
    C2: A ⊥ V \\ A \\ de(A) \\ pa(A) | pa(A)
    Empty left-hand sets pass trivially. With `pairwise` each set query is
    asked one right-hand node at a time, which is equivalent for
    distributions with the composition property (Gaussians included).
    """
    g = as_hybrid(graph)
    report = VerificationReport()

    def holds(a: int, left: frozenset[int], cond: frozenset[int]) -> bool:
        if not left:
            return True
        if pairwise:
            return all(oracle.query((a,), (b,), cond) for b in sorted(left))
        return oracle.query((a,), left, cond)

    for a, name in g.nodes:
        ne_a = neighbors(g, {a})
        left1 = connectivity_component(g, a) - {a} - ne_a
        cond1 = parents(g, ne_a | {a}) | ne_a
        ok1 = holds(a, left1, cond1)
        report.add(f"C1[{name}]", ok1, None if ok1 else _witness(g, (a,), left1, cond1))

        pa_a = parents(g, {a})
        left2 = frozenset(range(g.n)) - {a} - descendants(g, {a}) - pa_a
        ok2 = holds(a, left2, pa_a)
        report.add(f"C2[{name}]", ok2, None if ok2 else _witness(g, (a,), left2, pa_a))
    log_verification_result("c1_c2", report.passed, n_nodes=g.n, failures=len(report.failures()))
    return report


def _first_unanswered(oracle: BaseOracle, graph: GraphLike) -> Optional[Statement]:
    g = as_hybrid(graph)
    if g.n > settings.markov_check_max_nodes:
        raise_guard_exceeded("is_markovian", g.n, settings.markov_check_max_nodes)
    for statement in sorted(independence_model(g)):
        if not oracle.query(*statement):
            return statement
    return None


def is_markovian(oracle: BaseOracle, graph: GraphLike) -> bool:
    """True iff the oracle answers independent on every separation of the graph"""
    return _first_unanswered(oracle, graph) is None


def check_markov(oracle: BaseOracle, graph: GraphLike) -> VerificationReport:
    g = as_hybrid(graph)
    missing = _first_unanswered(oracle, g)
    report = VerificationReport()
    report.add("markov", missing is None, None if missing is None else format_statement(g, missing))
    return report


# ---------- enumeration ----------------------------------------------------
_PAIR_STATES = (EdgeKind.none, EdgeKind.forward, EdgeKind.backward, EdgeKind.undirected)


def enumerate_hybrid_graphs(names: Sequence[str]) -> Iterator[HybridGraph]:
    names = tuple(names)
    if len(names) > settings.enumeration_max_nodes:
        raise_guard_exceeded("enumerate_hybrid_graphs", len(names), settings.enumeration_max_nodes)
    pairs = list(combinations(range(len(names)), 2))
    for states in product(_PAIR_STATES, repeat=len(pairs)):
        directed, undirected = set(), set()
        for (u, v), state in zip(pairs, states):
            if state is EdgeKind.forward:
                directed.add((u, v))
            elif state is EdgeKind.backward:
                directed.add((v, u))
            elif state is EdgeKind.undirected:
                undirected.add((u, v))
        yield HybridGraph(names=names, directed=frozenset(directed), undirected=frozenset(undirected))


def enumerate_cgs(names: Sequence[str]) -> Iterator[ChainGraph]:
    """Every CG over the nodes exactly once, in a fixed order"""
    for g in enumerate_hybrid_graphs(names):
        if is_chain_graph(g):
            yield ChainGraph(graph=g)


def triplex_classes(names: Sequence[str]) -> dict[tuple, list[ChainGraph]]:
    classes: dict[tuple, list[ChainGraph]] = defaultdict(list)
    for cg in enumerate_cgs(names):
        classes[equivalence_signature(cg)].append(cg)
    return dict(classes)


def triplex_class(graph: GraphLike) -> list[ChainGraph]:
    """All CGs over the same nodes that are triplex-equivalent to the graph"""
    g = as_hybrid(graph)
    signature = equivalence_signature(g)
    return [cg for cg in enumerate_cgs(g.names) if equivalence_signature(cg) == signature]


def flags_preserved_in_class(graph: GraphLike, members: Optional[Iterable[GraphLike]] = None) -> bool:
    """True iff every oriented flag of the graph occurs in every member of its triplex class"""
    shapes = flag_shapes(graph)
    if not shapes:
        return True
    members = triplex_class(graph) if members is None else members
    return all(shapes <= flag_shapes(f) for f in members)


# ---------- fixtures -------------------------------------------------------
def meek_fixture_graphs() -> tuple[ChainGraph, ChainGraph]:
    f = HybridGraph.from_edges(FIXTURE_NAMES, **MEEK_F_EDGES)
    h = HybridGraph.from_edges(FIXTURE_NAMES, **MEEK_H_EDGES)
    return ChainGraph.from_graph(f), ChainGraph.from_graph(h)


def meek_characterization() -> frozenset[Statement]:
    """Separations of the Meek fixture H, listed by hand.

    A ⊥ Y | Z for non-empty Y and Z inside {B, C, E}; C ⊥ Y | Z for non-empty
    Y inside {B, E} and Z ⊇ {A, D}. Canonical form covers the mirrored side.
    """
    a, b, c, d, e = range(5)
    statements = set()

    def subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
        for k in range(len(items) + 1):
            yield from combinations(items, k)

    for y in subsets((b, c, e)):
        if y:
            for z in subsets(tuple(v for v in (b, c, e) if v not in y)):
                statements.add(canonical_statement((a,), y, z))
    for y in subsets((b, e)):
        if y:
            for extra in subsets(tuple(v for v in (b, e) if v not in y)):
                statements.add(canonical_statement((c,), y, (a, d, *extra)))
    return frozenset(statements)


def meek_counterexample_fixture() -> VerificationReport:
    f, h = meek_fixture_graphs()
    model_f, model_h = independence_model(f), independence_model(h)
    report = VerificationReport()

    extra = sorted(model_h - model_f)
    report.add("meek.model_inclusion", not extra, None if not extra else format_statement(h, extra[0]))

    expected = meek_characterization()
    mismatch = sorted(model_h ^ expected)
    report.add(
        "meek.model_characterization",
        not mismatch,
        None if not mismatch else format_statement(h, mismatch[0]),
    )

    equivalent = triplex_equivalent(f, h)
    report.add("meek.not_triplex_equivalent", not equivalent, "F and H are triplex-equivalent" if equivalent else None)
    log_verification_result("meek_fixture", report.passed)
    return report


def deflagged_fixture_graphs() -> tuple[ChainGraph, ChainGraph]:
    g = HybridGraph.from_edges(FIXTURE_NAMES, **DEFLAGGED_G_EDGES)
    h = HybridGraph.from_edges(FIXTURE_NAMES, **DEFLAGGED_H_EDGES)
    return ChainGraph.from_graph(g), ChainGraph.from_graph(h)


def deflagged_example_fixture() -> VerificationReport:
    g, h = deflagged_fixture_graphs()
    report = VerificationReport()
    same = triplex_equivalent(g, h)
    report.add("deflagged.g_h_equivalent", same, None if same else repr(h.graph))

    result = learn(graph_oracle(g))
    learned = result.graph
    report.add("deflagged.learned_is_chain", result.is_chain_graph, None if result.is_chain_graph else repr(learned))
    for label, target in (("g", g), ("h", h)):
        ok = triplex_equivalent(learned, target)
        report.add(f"deflagged.learned_equivalent_{label}", ok, None if ok else repr(learned))
    log_verification_result("deflagged_fixture", report.passed)
    return report


def run_fixtures() -> VerificationReport:
    report = VerificationReport()
    report.extend(meek_counterexample_fixture())
    report.extend(deflagged_example_fixture())
    return report


# ---------- learner verification ------------------------------------------
def verify_learner(
    graph: GraphLike,
    result: Optional[LearningResult] = None,
    members: Optional[Iterable[GraphLike]] = None,
) -> VerificationReport:
    """Correctness properties of a learning run driven by the graph's own oracle.

    The class-wide flag check runs when `members` is given or the graph is
    small enough to enumerate.
    """
    g = as_hybrid(graph)
    if result is None:
        result = learn(graph_oracle(g))
    learned = result.graph
    report = VerificationReport()

    report.add("learner.is_chain", result.is_chain_graph, None if result.is_chain_graph else repr(learned))

    same_skeleton = result.skeleton == g.skeleton()
    report.add("learner.skeleton", same_skeleton, None if same_skeleton else repr(learned))

    unsound = [e for e in result.marks.history if g.has_arrow(e.other, e.at)]
    witness = None
    if unsound:
        event = unsound[0]
        witness = f"{event.rule} blocked {g.names[event.at]} on {g.names[event.other]} -> {g.names[event.at]}"
    report.add("learner.sound_blocks", not unsound, witness)

    lost = sorted(triplexes(g) ^ triplexes(learned), key=lambda t: (t.center, t.pair))
    report.add("learner.triplexes", not lost, None if not lost else f"({g.label(lost[0].pair)},{g.names[lost[0].center]})")

    missing = immoralities(g) - immoralities(learned)
    report.add("learner.immoralities", not missing, None if not missing else repr(sorted(missing, key=lambda t: (t.center, t.pair))[0]))

    if result.is_chain_graph and (members is not None or g.n <= settings.enumeration_max_nodes):
        ok = flags_preserved_in_class(learned, members)
        report.add("learner.deflagged", ok, None if ok else repr(learned))
    return report


# ---------- random graphs --------------------------------------------------
def random_chain_graph(
    names: Sequence[str],
    rng: np.random.Generator,
    max_degree: int = 3,
    edge_probability: float = 0.5,
    clique_components: bool = False,
) -> ChainGraph:
    """Random CG: nodes are shuffled into consecutive blocks; lines stay inside a block, arrows point to later blocks.

    With `clique_components` a block holds at most `max_degree` nodes and is
    either joined by lines pairwise or left without lines, so every chain
    component is complete.
    """
    names = tuple(names)
    n = len(names)
    order = [int(v) for v in rng.permutation(n)]
    blocks: list[list[int]] = []
    for v in order:
        full = clique_components and bool(blocks) and len(blocks[-1]) >= max_degree
        if not blocks or full or rng.random() < 0.5:
            blocks.append([v])
        else:
            blocks[-1].append(v)
    block_of = {v: i for i, block in enumerate(blocks) for v in block}

    degree = [0] * n
    directed, undirected = set(), set()
    if clique_components:
        for block in blocks:
            if len(block) > 1 and rng.random() < edge_probability:
                for u, v in combinations(block, 2):
                    undirected.add((u, v))
                    degree[u] += 1
                    degree[v] += 1
    for i, j in combinations(range(n), 2):
        u, v = order[i], order[j]
        if clique_components and block_of[u] == block_of[v]:
            continue
        if degree[u] >= max_degree or degree[v] >= max_degree or rng.random() >= edge_probability:
            continue
        if block_of[u] == block_of[v]:
            undirected.add((u, v))
        else:
            directed.add((u, v))
        degree[u] += 1
        degree[v] += 1
    return ChainGraph(graph=HybridGraph(names=names, directed=frozenset(directed), undirected=frozenset(undirected)))


def random_hybrid_graph(names: Sequence[str], rng: np.random.Generator, edge_probability: float = 0.5) -> HybridGraph:
    """Any hybrid graph: each pair independently gets no edge, an arrow either way, or a line"""
    names = tuple(names)
    directed, undirected = set(), set()
    for u, v in combinations(range(len(names)), 2):
        if rng.random() >= edge_probability:
            continue
        pick = int(rng.integers(3))
        if pick == 0:
            directed.add((u, v))
        elif pick == 1:
            directed.add((v, u))
        else:
            undirected.add((u, v))
    return HybridGraph(names=names, directed=frozenset(directed), undirected=frozenset(undirected))
