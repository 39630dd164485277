from __future__ import annotations

from typing import Iterable

from pydantic import BaseModel, ConfigDict, model_validator

from ..core.exceptions import SeparationError
from .graph import EndKind, HybridGraph

# (X, Y, Z) as sorted index tuples with X <= Y
Statement = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def canonical_statement(x: Iterable[int], y: Iterable[int], z: Iterable[int]) -> Statement:
    xs, ys, zs = tuple(sorted(x)), tuple(sorted(y)), tuple(sorted(z))
    if ys < xs:
        xs, ys = ys, xs
    return (xs, ys, zs)


def is_head_no_tail(k_in: EndKind, k_out: EndKind) -> bool:
    """Both route-edge ends at an interior node: at least one head, no tail"""
    if k_in is EndKind.tail or k_out is EndKind.tail:
        return False
    return k_in is EndKind.head or k_out is EndKind.head


class SeparationQuery(BaseModel):
    """X ⊥ Y | Z over node indices"""
    model_config = ConfigDict(frozen=True)

    x: frozenset[int]
    y: frozenset[int]
    z: frozenset[int] = frozenset()

    @model_validator(mode="after")
    def _well_formed(self) -> "SeparationQuery":
        if not self.x or not self.y:
            raise SeparationError("X and Y must be non-empty", context={"x": sorted(self.x), "y": sorted(self.y)})
        if self.x & self.y or self.x & self.z or self.y & self.z:
            raise SeparationError(
                "X, Y and Z must be pairwise disjoint",
                context={"x": sorted(self.x), "y": sorted(self.y), "z": sorted(self.z)},
            )
        return self

    @classmethod
    def of(
        cls,
        graph: HybridGraph,
        x: Iterable[str],
        y: Iterable[str],
        z: Iterable[str] = (),
    ) -> "SeparationQuery":
        """Build from node names"""
        return cls(x=graph.indices(x), y=graph.indices(y), z=graph.indices(z))

    def check_nodes(self, n: int) -> None:
        outside = [v for v in self.x | self.y | self.z if not 0 <= v < n]
        if outside:
            raise SeparationError(f"Query references unknown node indices {sorted(outside)}")

    def statement(self) -> Statement:
        return canonical_statement(self.x, self.y, self.z)
