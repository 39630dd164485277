from __future__ import annotations

from enum import Enum
from typing import Any, Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from .graph import Pair, normalize_pair


class EndMark(str, Enum):
    circle = "circle"   # unspecified: blocked or not
    block = "block"     # the edge may not point into this end


class BlockEvent(BaseModel):
    """A block placed at the `at`-end of the edge at − other"""
    model_config = ConfigDict(frozen=True)

    rule: str
    at: int
    other: int


class SeparatorMap(BaseModel):
    """S_AB recorded when the edge A − B was removed; S_AB = S_BA"""

    separators: dict[Pair, frozenset[int]] = Field(default_factory=dict)

    def record(self, a: int, b: int, separator: Iterable[int]) -> None:
        separator = frozenset(separator)
        if a in separator or b in separator:
            raise ValueError(f"separator of ({a}, {b}) must not contain the pair itself")
        self.separators[normalize_pair(a, b)] = separator

    def get(self, a: int, b: int) -> Optional[frozenset[int]]:
        return self.separators.get(normalize_pair(a, b))

    def pairs(self) -> list[Pair]:
        return sorted(self.separators)

    def __contains__(self, pair: Pair) -> bool:
        return normalize_pair(*pair) in self.separators

    def __len__(self) -> int:
        return len(self.separators)


class MarkedGraph(BaseModel):
    """Learner state: a fixed skeleton whose edge ends carry circle/block marks.

    `marks[(u, v)]` is the mark at the u-end of the edge u − v. Marks only
    ever move from circle to block; every block is recorded in `history`.
    """

    names: tuple[str, ...]
    marks: dict[Pair, EndMark] = Field(default_factory=dict)
    history: list[BlockEvent] = Field(default_factory=list)

    _adj: list[frozenset[int]] = PrivateAttr(default_factory=list)

    @model_validator(mode="after")
    def _marks_cover_both_ends(self) -> "MarkedGraph":
        for u, v in self.marks:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if (v, u) not in self.marks:
                raise ValueError(f"edge ({u}, {v}) is missing the mark at its {v}-end")
        return self

    def model_post_init(self, __context: Any) -> None:
        adj: list[set[int]] = [set() for _ in self.names]
        for u, v in self.marks:
            adj[u].add(v)
        self._adj = [frozenset(a) for a in adj]

    @classmethod
    def from_skeleton(cls, names: Iterable[str], skeleton: Iterable[Pair]) -> "MarkedGraph":
        marks: dict[Pair, EndMark] = {}
        for u, v in skeleton:
            marks[(u, v)] = EndMark.circle
            marks[(v, u)] = EndMark.circle
        return cls(names=tuple(names), marks=marks)

    @property
    def n(self) -> int:
        return len(self.names)

    def skeleton(self) -> frozenset[Pair]:
        return frozenset(normalize_pair(u, v) for u, v in self.marks)

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.marks

    def neighbors(self, u: int) -> frozenset[int]:
        return self._adj[u]

    def is_blocked(self, at: int, other: int) -> bool:
        return self.marks[(at, other)] is EndMark.block

    def block(self, at: int, other: int, rule: str) -> bool:
        """Block the `at`-end of at − other; False when it already was"""
        if self.marks[(at, other)] is EndMark.block:
            return False
        self.marks[(at, other)] = EndMark.block
        self.history.append(BlockEvent(rule=rule, at=at, other=other))
        return True

    def blocks(self) -> frozenset[Pair]:
        return frozenset(end for end, mark in self.marks.items() if mark is EndMark.block)

    def doubly_blocked(self) -> list[Pair]:
        return sorted(
            (u, v) for u, v in self.marks
            if u < v and self.is_blocked(u, v) and self.is_blocked(v, u)
        )
