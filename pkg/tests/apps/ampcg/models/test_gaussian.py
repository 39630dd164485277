# tests/apps/ampcg/models/test_gaussian.py
import numpy as np
import pytest

from apps.ampcg.core.exceptions import GraphError
from apps.ampcg.models.gaussian import ComponentParams, Dataset


def test_dataset_checks_shape_and_values():
    d = Dataset(names=("A", "B"), values=np.zeros((3, 2)))
    assert d.n == 3
    assert d.column("B") == 1
    with pytest.raises(GraphError):
        d.column("C")
    with pytest.raises(ValueError):
        Dataset(names=("A",), values=np.zeros((3, 2)))
    with pytest.raises(ValueError):
        Dataset(names=("A", "B"), values=np.array([[0.0, np.nan]]))
    with pytest.raises(ValueError):
        Dataset(names=("A",), values=np.zeros(3))


def test_component_shapes():
    ComponentParams(nodes=(1, 2), parents=(0,), coefficients=np.zeros((2, 1)), precision=np.eye(2))
    with pytest.raises(ValueError):
        ComponentParams(nodes=(1, 2), parents=(0,), coefficients=np.zeros((1, 2)), precision=np.eye(2))
    with pytest.raises(ValueError):
        ComponentParams(nodes=(1, 2), parents=(), coefficients=np.zeros((2, 0)), precision=np.array([[1.0, 0.3], [0.0, 1.0]]))
