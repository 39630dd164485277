import threading
from typing import Iterable

from ..models.report import QueryStats
from ..models.separation import Statement
from .base_oracle import BaseOracle


class CountingOracle(BaseOracle):
    """Transparent memoizing wrapper that counts every query.

    Queries are keyed on the canonical (X, Y, Z) so that X ⊥ Y | Z and
    Y ⊥ X | Z share one inner call. A lock guards the cache and the stats, so
    one wrapper may be shared between threads.
    """

    def __init__(self, inner: BaseOracle):
        super().__init__(inner.names)
        self.inner = inner
        self.stats = QueryStats()
        self.inner_calls = 0
        self._cache: dict[Statement, bool] = {}
        self._lock = threading.Lock()

    def query(self, x: Iterable[int], y: Iterable[int], z: Iterable[int] = ()) -> bool:
        key = self.key(x, y, z)
        with self._lock:
            self.stats.record(len(key[2]))
            if key in self._cache:
                return self._cache[key]
        answer = self.inner.query(key[0], key[1], key[2])
        with self._lock:
            if key not in self._cache:
                self.inner_calls += 1
                self._cache[key] = answer
            return self._cache[key]


def counting_oracle(inner: BaseOracle) -> CountingOracle:
    """Wrap `inner`; usage is available on the returned oracle's `stats`"""
    return CountingOracle(inner)
