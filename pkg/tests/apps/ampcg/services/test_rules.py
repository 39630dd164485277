# tests/apps/ampcg/services/test_rules.py
from itertools import combinations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.ampcg.models.marks import MarkedGraph, SeparatorMap
from apps.ampcg.services.rules import (
    BlockedPathRule,
    DoubleColliderRule,
    PropagationRule,
    RuleEngine,
    UnshieldedColliderRule,
    apply_rules,
)

A, B, C, D = range(4)


def _separators(entries: dict) -> SeparatorMap:
    s = SeparatorMap()
    for (a, b), sep in entries.items():
        s.record(a, b, sep)
    return s


def test_r1_blocks_both_outer_ends():
    h = MarkedGraph.from_skeleton("ABC", [(A, B), (B, C)])
    s = _separators({(A, C): set()})
    assert UnshieldedColliderRule().candidates(h, s) == [(A, B), (C, B)]
    out = apply_rules(h, s)
    assert out.blocks() == frozenset({(A, B), (C, B)})
    assert {e.rule for e in out.history} == {"R1"}
    assert h.blocks() == frozenset()


def test_r2_propagates_away_from_a_block():
    h = MarkedGraph.from_skeleton("ABC", [(A, B), (B, C)])
    h.block(A, B, "given")
    s = _separators({(A, C): {B}})
    assert UnshieldedColliderRule().candidates(h, s) == []
    assert PropagationRule().candidates(h, s) == [(B, C)]
    assert apply_rules(h, s).blocks() == frozenset({(A, B), (B, C)})


def test_r3_closes_a_blocked_path():
    h = MarkedGraph.from_skeleton("ABC", [(A, B), (B, C), (A, C)])
    h.block(A, B, "given")
    h.block(B, C, "given")
    assert BlockedPathRule().candidates(h, SeparatorMap()) == [(A, C)]
    out = apply_rules(h, SeparatorMap())
    assert out.blocks() == frozenset({(A, B), (B, C), (A, C)})
    assert out.history[-1].rule == "R3"


def test_r4_blocks_the_top_of_a_double_collider():
    h = MarkedGraph.from_skeleton("ABCD", [(A, B), (A, C), (A, D), (C, B), (D, B)])
    s = _separators({(C, D): {A}})
    h.block(C, B, "given")
    h.block(D, B, "given")
    assert DoubleColliderRule().candidates(h, s) == [(A, B)]

    s_without_a = _separators({(C, D): set()})
    assert DoubleColliderRule().candidates(h, s_without_a) == []


def test_r4_fixpoint_from_scratch():
    h = MarkedGraph.from_skeleton("ABCD", [(A, B), (A, C), (A, D), (C, B), (D, B)])
    out = apply_rules(h, _separators({(C, D): {A}}))
    assert out.blocks() == frozenset({(C, B), (D, B), (A, B)})
    assert [e.rule for e in out.history] == ["R1", "R1", "R4"]


def test_nothing_fires_without_separated_pairs():
    h = MarkedGraph.from_skeleton("ABCD", list(combinations(range(4), 2)))
    assert apply_rules(h, SeparatorMap()).blocks() == frozenset()


def test_missing_separator_skips_the_rule():
    h = MarkedGraph.from_skeleton("ABC", [(A, B), (B, C)])
    assert apply_rules(h, SeparatorMap()).blocks() == frozenset()


@st.composite
def rule_instances(draw, n: int = 6):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    skeleton = [p for p in pairs if rng.random() < 0.5]
    marked = MarkedGraph.from_skeleton([f"V{i}" for i in range(n)], skeleton)
    separators = SeparatorMap()
    for a, b in pairs:
        if (a, b) not in skeleton:
            others = [v for v in range(n) if v not in (a, b)]
            separators.record(a, b, [v for v in others if rng.random() < 0.4])
    return marked, separators


@given(rule_instances())
@settings(max_examples=25, deadline=None)
def test_fixpoint_does_not_depend_on_the_order(instance):
    marked, separators = instance
    reference = apply_rules(marked, separators).blocks()
    for seed in range(5):
        assert apply_rules(marked, separators, rng=np.random.default_rng(seed)).blocks() == reference


def test_engine_runs_in_place():
    h = MarkedGraph.from_skeleton("ABC", [(A, B), (B, C)])
    out = RuleEngine().run(h, _separators({(A, C): set()}))
    assert out is h
    assert h.blocks() == frozenset({(A, B), (C, B)})
