# tests/apps/ampcg/oracles/test_data_oracle.py
import numpy as np
import pytest

from apps.ampcg.core.exceptions import ErrorCode, OracleError
from apps.ampcg.models.gaussian import Dataset
from apps.ampcg.oracles import DataOracle, data_oracle
from apps.ampcg.services.gaussian_service import fisher_z_independent, random_params, sample
from tests.strategies import cg


@pytest.fixture(scope="module")
def collider_data() -> Dataset:
    return sample(random_params(cg("A -> B\nC -> B"), seed=2), 5000, seed=3)


def test_matches_the_fisher_z_test(collider_data):
    oracle = data_oracle(collider_data, alpha=0.01)
    assert isinstance(oracle, DataOracle)
    assert oracle.names == ("A", "B", "C")
    for x, y, z in [(0, 2, ()), (0, 2, (1,)), (0, 1, ()), (1, 2, (0,))]:
        assert oracle.independent(x, y, z) == fisher_z_independent(collider_data, x, y, z, alpha=0.01)


def test_collider_is_visible_in_the_data(collider_data):
    oracle = data_oracle(collider_data, alpha=0.01)
    assert not oracle.independent(0, 1)
    assert not oracle.independent(0, 2, (1,))


def test_each_distinct_test_runs_once(collider_data):
    oracle = data_oracle(collider_data, alpha=0.01)
    oracle.independent(0, 2)
    oracle.independent(2, 0)
    oracle.query((0,), (2,), ())
    oracle.independent(0, 2, (1,))
    assert oracle.tests_run == 2


def test_rejects_set_queries(collider_data):
    oracle = data_oracle(collider_data, alpha=0.01)
    with pytest.raises(OracleError) as exc:
        oracle.query((0,), (1, 2))
    assert exc.value.error_code is ErrorCode.ORACLE_QUERY_UNSUPPORTED
    assert oracle.tests_run == 0


def test_alpha_changes_the_threshold():
    # Y = X + 2W with X and W orthogonal: r = 1/sqrt(5), statistic about 1.08 on 8 rows
    x = np.array([1, -1, 1, -1, 1, -1, 1, -1], dtype=float)
    w = np.array([1, 1, -1, -1, 1, 1, -1, -1], dtype=float)
    data = Dataset(names=("X", "Y"), values=np.column_stack([x, x + 2 * w]))
    assert data_oracle(data, alpha=0.01).independent(0, 1)
    assert not data_oracle(data, alpha=0.5).independent(0, 1)
