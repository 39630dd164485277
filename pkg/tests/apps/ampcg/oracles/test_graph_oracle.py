# tests/apps/ampcg/oracles/test_graph_oracle.py
import pytest

from apps.ampcg.core.exceptions import GraphError
from apps.ampcg.oracles import GraphOracle, graph_oracle
from tests.strategies import cg, hg


def test_answers_are_separations(meek_pair):
    _, h = meek_pair
    oracle = graph_oracle(h)
    assert oracle.names == ("A", "B", "C", "D", "E")
    assert oracle.query((0,), (1, 2, 4))
    assert oracle.independent(2, 1, (0, 3))
    assert not oracle.independent(2, 1, (3,))


def test_answers_are_symmetric():
    oracle = graph_oracle(cg("A -> B\nB -- C"))
    assert oracle.independent(0, 2) and oracle.independent(2, 0)
    assert not oracle.independent(0, 2, (1,))
    assert not oracle.independent(2, 0, (1,))


def test_factory_accepts_either_graph_type():
    assert isinstance(graph_oracle(hg("A -> B")), GraphOracle)
    assert isinstance(graph_oracle(cg("A -> B")), GraphOracle)
    with pytest.raises(GraphError):
        graph_oracle(hg("A -> B\nB -> C\nC -> A"))
