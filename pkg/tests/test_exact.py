# tests/test_exact.py
import pytest

from acquaintance.dynamics import reverse, verify_acquaintance
from acquaintance.exact import enumerate_matchings, exact_ac
from acquaintance.strategies import best_strategy
from models import DisconnectedGraphError, Graph, SizeCapExceededError
from tests.helpers import family, small_graph_pool


@pytest.mark.parametrize(
    "name,params,value",
    [
        ("path", (1,), 0),
        ("path", (3,), 1),
        ("path", (4,), 2),
        ("cycle", (4,), 1),
        ("kbip", (2, 2), 1),
        ("complete", (5,), 0),
        ("kbip", (1, 5), 4),
    ],
)
def test_known_values(name, params, value):
    g = family(name, *params)
    result = exact_ac(g)
    assert result.value == value
    assert len(result.witness) == value
    assert verify_acquaintance(g, result.witness)[0]
    assert verify_acquaintance(g, reverse(result.witness))[0]


def test_complete_bipartite_four_four():
    g = family("kbip", 4, 4)
    matchings = list(enumerate_matchings(g))
    assert len(matchings) == 208
    assert matchings[0] == ((0, 4),)
    assert exact_ac(g, max_rounds=2).value == 2


def test_enumeration_order(p4):
    assert list(enumerate_matchings(p4)) == [((0, 1),), ((1, 2),), ((2, 3),), ((0, 1), (2, 3))]


def test_round_cap_reports_exceeded(p4):
    result = exact_ac(p4, max_rounds=1)
    assert result.exceeded
    assert result.value is None and result.witness is None


def test_vertex_cap():
    with pytest.raises(SizeCapExceededError):
        exact_ac(family("path", 11))
    assert exact_ac(family("path", 5), max_vertices=5).value is not None


def test_disconnected_input_is_rejected():
    with pytest.raises(DisconnectedGraphError):
        exact_ac(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_exact_value_never_beats_constructed_strategies():
    for g in small_graph_pool(40, max_n=6, seed=3):
        result = exact_ac(g)
        value = result.value
        assert value is not None
        assert verify_acquaintance(g, reverse(result.witness))[0]
        assert value <= len(best_strategy(g, seed=0))
