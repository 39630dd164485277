"""Conditional-independence oracles.

The learner sees a distribution only through queries X ⊥ Y | Z. Answers must
be deterministic and symmetric in X and Y for the lifetime of an oracle.
"""

from abc import ABC, abstractmethod
from typing import Iterable

from ..models.separation import Statement, canonical_statement


class BaseOracle(ABC):
    """Base class for all independence oracles"""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)

    @abstractmethod
    def query(self, x: Iterable[int], y: Iterable[int], z: Iterable[int] = ()) -> bool:
        """True iff X is independent of Y given Z"""
        pass

    def independent(self, a: int, b: int, z: Iterable[int] = ()) -> bool:
        return self.query((a,), (b,), z)

    @staticmethod
    def key(x: Iterable[int], y: Iterable[int], z: Iterable[int]) -> Statement:
        return canonical_statement(x, y, z)


IndependenceOracle = BaseOracle
