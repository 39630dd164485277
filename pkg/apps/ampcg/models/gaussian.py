from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..core.exceptions import raise_unknown_node


class ComponentParams(BaseModel):
    """Block-recursive parameters of one chain component τ.

    x_τ = coefficients @ x_parents + ε_τ,  ε_τ ~ N(0, precision⁻¹)
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    nodes: tuple[int, ...]
    parents: tuple[int, ...]
    coefficients: np.ndarray
    precision: np.ndarray

    @model_validator(mode="after")
    def _shapes(self) -> "ComponentParams":
        k, p = len(self.nodes), len(self.parents)
        if self.coefficients.shape != (k, p):
            raise ValueError(f"coefficients must be {k}x{p}, got {self.coefficients.shape}")
        if self.precision.shape != (k, k):
            raise ValueError(f"precision must be {k}x{k}, got {self.precision.shape}")
        if not np.allclose(self.precision, self.precision.T):
            raise ValueError("precision must be symmetric")
        return self


class AmpGaussianParams(BaseModel):
    """Components in topological order of the chain-component quotient"""

    names: tuple[str, ...]
    components: tuple[ComponentParams, ...]


class Dataset(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    names: tuple[str, ...]
    values: np.ndarray

    @field_validator("values")
    @classmethod
    def _finite_matrix(cls, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.ndim != 2:
            raise ValueError("dataset values must be a 2-D array")
        if not np.isfinite(v).all():
            raise ValueError("dataset contains missing or non-finite values")
        return v

    @model_validator(mode="after")
    def _column_count(self) -> "Dataset":
        if self.values.shape[1] != len(self.names):
            raise ValueError(f"{len(self.names)} column names for {self.values.shape[1]} columns")
        return self

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def column(self, name: str) -> int:
        if name not in self.names:
            raise_unknown_node([name])
        return self.names.index(name)


class FisherZResult(BaseModel):
    partial_correlation: float
    statistic: float
    pvalue: float
    independent: bool
