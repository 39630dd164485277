# tests/apps/ampcg/services/test_gaussian_service.py
from itertools import combinations

import numpy as np
import pytest
from rich import print

from apps.ampcg.core.exceptions import DataError, ErrorCode, GraphError
from apps.ampcg.models.gaussian import AmpGaussianParams, ComponentParams, Dataset
from apps.ampcg.services.analysis_service import default_names, random_chain_graph
from apps.ampcg.services.gaussian_service import (
    fisher_z_independent,
    fisher_z_test,
    random_params,
    sample,
)
from apps.ampcg.services.separation_service import separated_sets
from tests.strategies import cg, hg

# X, Y and Z are centred and mutually orthogonal: their sample correlations are exactly 0
X = [1, -1, 1, -1, 1, -1, 1, -1]
Y = [1, 1, -1, -1, 1, 1, -1, -1]
Z = [1, 1, 1, 1, -1, -1, -1, -1]


@pytest.fixture
def orthogonal() -> Dataset:
    values = np.array([X, Y, Z, np.array(X) + 0.1 * np.array(Y)], dtype=float).T
    return Dataset(names=("X", "Y", "Z", "W"), values=values)


def test_params_match_the_graph(deflagged_pair):
    g, _ = deflagged_pair
    params = random_params(g, seed=11)
    assert params.names == g.names
    seen = set()
    for comp in params.components:
        seen |= set(comp.nodes)
        for i, v in enumerate(comp.nodes):
            for j, u in enumerate(comp.parents):
                coef = comp.coefficients[i, j]
                if g.graph.has_arrow(u, v):
                    assert 0.4 <= abs(coef) <= 0.9
                else:
                    assert coef == 0.0
            for j, w in enumerate(comp.nodes):
                if i == j:
                    continue
                entry = comp.precision[i, j]
                if g.graph.has_line(v, w):
                    assert 0.2 <= abs(entry) <= 0.4
                else:
                    assert entry == 0.0
        off_diagonal = np.abs(comp.precision).sum(axis=1) - np.diag(comp.precision)
        assert np.allclose(np.diag(comp.precision), 1.0 + off_diagonal)
        np.linalg.cholesky(comp.precision)
    assert seen == set(range(g.n))


def test_params_follow_component_order(deflagged_pair):
    g, _ = deflagged_pair
    placed: set[int] = set()
    for comp in random_params(g, seed=0).components:
        assert set(comp.parents) <= placed
        placed |= set(comp.nodes)


def test_params_are_seeded(deflagged_pair):
    g, _ = deflagged_pair
    first, second = random_params(g, seed=5), random_params(g, seed=5)
    for a, b in zip(first.components, second.components):
        assert np.array_equal(a.coefficients, b.coefficients)
        assert np.array_equal(a.precision, b.precision)


def test_params_need_a_chain_graph():
    with pytest.raises(GraphError):
        random_params(hg("A -> B\nB -- C\nC -- A"), seed=0)


def test_sampling_is_deterministic(deflagged_pair):
    g, _ = deflagged_pair
    params = random_params(g, seed=1)
    a, b = sample(params, 50, seed=7), sample(params, 50, seed=7)
    assert a.values.shape == (50, 5)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, sample(params, 50, seed=8).values)


def test_undirected_component_has_the_requested_covariance():
    params = random_params(cg("A -- B"), seed=3)
    data = sample(params, 100000, seed=4)
    (comp,) = params.components
    expected = np.linalg.inv(comp.precision)
    error = np.linalg.norm(np.cov(data.values, rowvar=False) - expected) / np.linalg.norm(expected)
    assert error < 0.05


def test_independent_nodes_are_uncorrelated():
    data = sample(random_params(cg("node A\nnode B\nnode C"), seed=0), 100000, seed=0)
    corr = np.corrcoef(data.values, rowvar=False)
    assert np.all(np.abs(corr[np.triu_indices(3, k=1)]) < 0.02)


def test_sampling_errors():
    params = random_params(cg("A -> B"), seed=0)
    with pytest.raises(DataError) as exc:
        sample(params, 0, seed=0)
    assert exc.value.error_code is ErrorCode.DATA_INSUFFICIENT

    bad = AmpGaussianParams(
        names=("A", "B"),
        components=(
            ComponentParams(
                nodes=(0, 1),
                parents=(),
                coefficients=np.zeros((2, 0)),
                precision=np.array([[1.0, 2.0], [2.0, 1.0]]),
            ),
        ),
    )
    with pytest.raises(DataError) as exc:
        sample(bad, 10, seed=0)
    assert exc.value.error_code is ErrorCode.DATA_NOT_POSITIVE_DEFINITE


def test_fisher_z_on_orthogonal_columns(orthogonal):
    result = fisher_z_test(orthogonal, 0, 1, alpha=0.01)
    assert result.partial_correlation == pytest.approx(0.0, abs=1e-12)
    assert result.statistic == pytest.approx(0.0, abs=1e-9)
    assert result.pvalue == pytest.approx(1.0)
    assert result.independent
    assert fisher_z_independent(orthogonal, 0, 1, [2])


def test_fisher_z_detects_dependence(orthogonal):
    result = fisher_z_test(orthogonal, 0, 3, alpha=0.01)
    assert result.partial_correlation == pytest.approx(1 / np.sqrt(1.01))
    expected = np.arctanh(1 / np.sqrt(1.01)) * np.sqrt(8 - 3)
    assert result.statistic == pytest.approx(expected)
    assert not result.independent
    assert result.pvalue < 0.01


def test_fisher_z_rejects_singular_and_short_data(orthogonal):
    with pytest.raises(DataError) as exc:
        fisher_z_test(orthogonal, 0, 3, [1])
    assert exc.value.error_code is ErrorCode.DATA_SINGULAR

    constant = Dataset(names=("A", "B"), values=np.array([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 5.0], [1.0, 3.0]]))
    with pytest.raises(DataError) as exc:
        fisher_z_test(constant, 0, 1)
    assert exc.value.error_code is ErrorCode.DATA_SINGULAR

    short = Dataset(names=orthogonal.names, values=orthogonal.values[:4])
    with pytest.raises(DataError) as exc:
        fisher_z_test(short, 0, 1, [2])
    assert exc.value.error_code is ErrorCode.DATA_INSUFFICIENT


@pytest.mark.parametrize("x, y, z", [(0, 0, ()), (0, 1, (1,)), (0, 9, ())])
def test_fisher_z_rejects_bad_columns(orthogonal, x, y, z):
    with pytest.raises(DataError) as exc:
        fisher_z_test(orthogonal, x, y, z)
    assert exc.value.error_code is ErrorCode.DATA_FORMAT_INVALID


def test_precomputed_correlation_gives_the_same_answer(orthogonal):
    corr = np.corrcoef(orthogonal.values, rowvar=False)
    with_corr = fisher_z_test(orthogonal, 0, 3, [2], correlation=corr)
    without = fisher_z_test(orthogonal, 0, 3, [2])
    assert with_corr.statistic == pytest.approx(without.statistic)
    assert with_corr.independent == without.independent


def test_fisher_z_on_sampled_data_sees_a_direct_effect():
    data = sample(random_params(cg("A -> B"), seed=2), 10000, seed=2)
    result = fisher_z_test(data, 0, 1, alpha=0.01)
    r = abs(result.partial_correlation)
    assert r > 0.3
    assert result.statistic == pytest.approx(np.arctanh(r) * np.sqrt(10000 - 3))
    assert not result.independent
    assert not fisher_z_independent(data, 0, 1)


def test_fisher_z_on_sampled_data_screens_off_a_chain():
    g = cg("A -> B\nB -> C")
    accepted = 0
    for seed in range(20):
        data = sample(random_params(g, seed), 10000, seed)
        assert not fisher_z_independent(data, 0, 2)
        accepted += fisher_z_independent(data, 0, 2, [1], alpha=0.01)
    assert accepted >= 17


@pytest.mark.slow
class TestSamplerMarkovProperty:
    def test_separations_pass_the_test(self):
        accepted = total = 0
        for seed in range(100):
            g = random_chain_graph(default_names(5), np.random.default_rng(seed), max_degree=3)
            data = sample(random_params(g, seed), 50000, seed)
            for x, y in combinations(range(5), 2):
                rest = [v for v in range(5) if v not in (x, y)]
                for size in range(3):
                    for z in combinations(rest, size):
                        if separated_sets(g, [x], [y], z):
                            total += 1
                            accepted += fisher_z_independent(data, x, y, z, alpha=0.01)
        print(f"[bold green]✓ {accepted}/{total} separations accepted")
        assert total > 0
        assert accepted >= 0.95 * total

    def test_adjacent_pairs_fail_the_test(self, deflagged_pair):
        g, _ = deflagged_pair
        pairs = sorted(g.graph.skeleton())
        detected = 0
        for seed in range(100):
            data = sample(random_params(g, seed), 50000, seed)
            for x, y in pairs:
                rest = [v for v in range(g.n) if v not in (x, y)]
                detected += not fisher_z_independent(data, x, y, rest, alpha=0.01)
        print(f"[bold green]✓ {detected}/{100 * len(pairs)} adjacencies detected")
        assert detected >= 0.99 * 100 * len(pairs)
