# tests/apps/ampcg/models/test_separation.py
import pytest

from apps.ampcg.core.exceptions import SeparationError
from apps.ampcg.models.graph import EndKind
from apps.ampcg.models.separation import SeparationQuery, canonical_statement, is_head_no_tail
from tests.strategies import hg


@pytest.mark.parametrize(
    "k_in, k_out, expected",
    [
        (EndKind.head, EndKind.head, True),
        (EndKind.head, EndKind.line, True),
        (EndKind.line, EndKind.head, True),
        (EndKind.line, EndKind.line, False),
        (EndKind.tail, EndKind.head, False),
        (EndKind.head, EndKind.tail, False),
        (EndKind.tail, EndKind.tail, False),
    ],
)
def test_head_no_tail(k_in, k_out, expected):
    assert is_head_no_tail(k_in, k_out) is expected


def test_canonical_statement_orders_the_sides():
    assert canonical_statement({3}, {1, 0}, {2}) == ((0, 1), (3,), (2,))
    assert canonical_statement({0}, {1}, ()) == canonical_statement({1}, {0}, ())


def test_query_needs_non_empty_disjoint_sets():
    with pytest.raises(SeparationError):
        SeparationQuery(x=frozenset(), y=frozenset({1}))
    with pytest.raises(SeparationError):
        SeparationQuery(x=frozenset({0}), y=frozenset({1}), z=frozenset({0}))
    with pytest.raises(SeparationError):
        SeparationQuery(x=frozenset({0, 1}), y=frozenset({1}))


def test_query_from_names():
    g = hg("A -> B\nB -- C")
    q = SeparationQuery.of(g, ["C"], ["A"], ["B"])
    assert q.statement() == ((0,), (2,), (1,))
    with pytest.raises(SeparationError):
        q.check_nodes(2)
