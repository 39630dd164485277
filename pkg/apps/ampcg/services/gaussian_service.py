"""Gaussian distributions Markovian wrt an AMP chain graph, and the Fisher-z test.

Random numbers come from numpy's `default_rng` (PCG64 bit generator), so a
(graph, seed) pair fixes the parameters and a (params, n, seed) triple fixes
the sample bit-exactly for a given numpy version.
"""

from itertools import combinations
from math import sqrt
from typing import Iterable, Optional

import numpy as np
import structlog
from scipy.linalg import solve_triangular
from scipy.stats import norm

from ..core.exceptions import DataError, ErrorCode
from ..models.gaussian import AmpGaussianParams, ComponentParams, Dataset, FisherZResult
from ..models.graph import ChainGraph, GraphLike, as_hybrid
from .graph_service import component_order, parents

log = structlog.get_logger(__name__)

COEFFICIENT_RANGE = (0.4, 0.9)
PRECISION_OFFDIAG_RANGE = (0.2, 0.4)
R_CLAMP = 1.0 - 1e-12
MAX_CONDITION = 1e12


def _signed_uniform(rng: np.random.Generator, low: float, high: float) -> float:
    magnitude = rng.uniform(low, high)
    return magnitude if rng.random() < 0.5 else -magnitude


def random_params(graph: GraphLike, seed: int) -> AmpGaussianParams:
    """Random parameters with sparsity exactly matching the graph.

    Precision blocks are diagonally dominant (diagonal = 1 + row abs-sum),
    hence positive definite.
    """
    g = as_hybrid(graph if isinstance(graph, ChainGraph) else ChainGraph.from_graph(graph))
    rng = np.random.default_rng(seed)
    components = []
    for comp in component_order(g):
        nodes = tuple(sorted(comp))
        pa = tuple(sorted(parents(g, comp)))

        coefficients = np.zeros((len(nodes), len(pa)))
        for i, v in enumerate(nodes):
            for j, u in enumerate(pa):
                if g.has_arrow(u, v):
                    coefficients[i, j] = _signed_uniform(rng, *COEFFICIENT_RANGE)

        precision = np.zeros((len(nodes), len(nodes)))
        for i, j in combinations(range(len(nodes)), 2):
            if g.has_line(nodes[i], nodes[j]):
                precision[i, j] = precision[j, i] = _signed_uniform(rng, *PRECISION_OFFDIAG_RANGE)
        np.fill_diagonal(precision, 1.0 + np.abs(precision).sum(axis=1))

        components.append(
            ComponentParams(nodes=nodes, parents=pa, coefficients=coefficients, precision=precision)
        )
    return AmpGaussianParams(names=g.names, components=tuple(components))


def sample(params: AmpGaussianParams, n: int, seed: int) -> Dataset:
    """Draw n rows, component by component in topological order"""
    if n < 1:
        raise DataError(f"sample size must be at least 1, got {n}", error_code=ErrorCode.DATA_INSUFFICIENT)
    rng = np.random.default_rng(seed)
    values = np.zeros((n, len(params.names)))
    for comp in params.components:
        try:
            factor = np.linalg.cholesky(comp.precision)
        except np.linalg.LinAlgError as e:
            raise DataError(
                "component precision matrix is not positive definite",
                error_code=ErrorCode.DATA_NOT_POSITIVE_DEFINITE,
                context={"nodes": list(comp.nodes)},
                cause=e,
            ) from e
        # precision = L Lᵀ, so L⁻ᵀ z has covariance precision⁻¹
        noise = solve_triangular(factor.T, rng.standard_normal((len(comp.nodes), n)), lower=False)
        mean = comp.coefficients @ values[:, list(comp.parents)].T
        values[:, list(comp.nodes)] = (mean + noise).T
    log.debug("sample_drawn", rows=n, columns=len(params.names), seed=seed)
    return Dataset(names=params.names, values=values)


def correlation_matrix(dataset: Dataset) -> np.ndarray:
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.atleast_2d(np.corrcoef(dataset.values, rowvar=False))


def fisher_z_test(
    dataset: Dataset,
    x: int,
    y: int,
    z: Iterable[int] = (),
    alpha: float = 0.01,
    correlation: Optional[np.ndarray] = None,
) -> FisherZResult:
    """Partial-correlation test of x ⊥ y | Z.

    Independence is declared iff |atanh(r)|·√(n − |Z| − 3) ≤ Φ⁻¹(1 − α/2).
    """
    zs = sorted(set(z))
    k = len(dataset.names)
    if not all(0 <= v < k for v in [x, y, *zs]):
        raise DataError(f"column index out of range 0..{k - 1}", error_code=ErrorCode.DATA_FORMAT_INVALID)
    if x == y or x in zs or y in zs:
        raise DataError("x, y and Z must be disjoint", error_code=ErrorCode.DATA_FORMAT_INVALID)
    if dataset.n <= len(zs) + 3:
        raise DataError(
            f"need more than {len(zs) + 3} rows for |Z| = {len(zs)}, got {dataset.n}",
            error_code=ErrorCode.DATA_INSUFFICIENT,
        )

    cols = [x, y, *zs]
    if correlation is None:
        with np.errstate(invalid="ignore", divide="ignore"):
            sub = np.atleast_2d(np.corrcoef(dataset.values[:, cols], rowvar=False))
    else:
        sub = correlation[np.ix_(cols, cols)]
    if not np.isfinite(sub).all() or np.linalg.cond(sub) > MAX_CONDITION:
        raise DataError(
            "correlation submatrix is singular",
            error_code=ErrorCode.DATA_SINGULAR,
            context={"columns": [dataset.names[c] for c in cols]},
        )

    inv = np.linalg.inv(sub)
    r = -inv[0, 1] / sqrt(inv[0, 0] * inv[1, 1])
    r = float(np.clip(r, -R_CLAMP, R_CLAMP))
    statistic = abs(float(np.arctanh(r))) * sqrt(dataset.n - len(zs) - 3)
    critical = norm.ppf(1 - alpha / 2)
    return FisherZResult(
        partial_correlation=r,
        statistic=statistic,
        pvalue=float(2 * norm.sf(statistic)),
        independent=bool(statistic <= critical),
    )


def fisher_z_independent(dataset: Dataset, x: int, y: int, z: Iterable[int] = (), alpha: float = 0.01) -> bool:
    return fisher_z_test(dataset, x, y, z, alpha).independent
