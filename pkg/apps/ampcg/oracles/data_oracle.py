import threading
from typing import Iterable

from ..core.exceptions import ErrorCode, OracleError
from ..models.gaussian import Dataset
from ..models.separation import Statement
from ..services.gaussian_service import correlation_matrix, fisher_z_test
from .base_oracle import BaseOracle


class DataOracle(BaseOracle):
    """Fisher-z tests over a dataset, one test per distinct query.

    Only singleton X and Y are supported. The correlation matrix is computed
    once; the memo table is lock-guarded.
    """

    def __init__(self, dataset: Dataset, alpha: float):
        super().__init__(dataset.names)
        self.dataset = dataset
        self.alpha = alpha
        self.tests_run = 0
        self._correlation = correlation_matrix(dataset)
        self._cache: dict[Statement, bool] = {}
        self._lock = threading.Lock()

    def query(self, x: Iterable[int], y: Iterable[int], z: Iterable[int] = ()) -> bool:
        key = self.key(x, y, z)
        if len(key[0]) != 1 or len(key[1]) != 1:
            raise OracleError(
                "data oracle answers single-variable queries only",
                error_code=ErrorCode.ORACLE_QUERY_UNSUPPORTED,
                context={"x": list(key[0]), "y": list(key[1])},
            )
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        result = fisher_z_test(
            self.dataset, key[0][0], key[1][0], key[2], self.alpha, correlation=self._correlation
        )
        with self._lock:
            if key not in self._cache:
                self.tests_run += 1
                self._cache[key] = result.independent
            return self._cache[key]


def data_oracle(dataset: Dataset, alpha: float) -> DataOracle:
    return DataOracle(dataset, alpha)
