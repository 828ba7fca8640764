# tests/test_dynamics.py
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acquaintance.dynamics import (
    apply_round,
    concat,
    merge_rounds,
    parallel_compose,
    relabel,
    reverse,
    simulate,
    validate_matching,
    verify_acquaintance,
)
from models import (
    AcquaintanceState,
    InvalidMatchingError,
    InvalidParameterError,
    Strategy,
    StrategyCompositionError,
)
from tests.helpers import connected_graphs, family, strategies_for


def test_three_round_path_strategy_verifies(p4):
    s = Strategy.from_rounds(4, [[(0, 1)], [(2, 3)], [(0, 1)]])
    assert verify_acquaintance(p4, s) == (True, [])


def test_reordered_path_strategy_fails(p4):
    s = Strategy.from_rounds(4, [[(0, 1)], [(0, 1)], [(2, 3)]])
    ok, missing = verify_acquaintance(p4, s)
    assert not ok
    assert missing


def test_validate_matching(p4):
    assert validate_matching(p4, [(0, 1), (2, 3)]) is None
    assert "not an edge" in validate_matching(p4, [(0, 2)])
    assert "two pairs" in validate_matching(p4, [(0, 1), (1, 2)])


def test_apply_round_leaves_input_untouched(p4):
    state = AcquaintanceState.initial(p4)
    nxt = apply_round(state, p4, [(1, 2)])
    assert state.round == 0 and nxt.round == 1
    assert nxt.position(1) == 2
    assert state.position(1) == 1
    with pytest.raises(InvalidMatchingError):
        apply_round(state, p4, [(0, 3)])


def test_simulate_reports_failing_round(p4):
    s = Strategy.from_rounds(4, [[(0, 1)], [(1, 3)]])
    with pytest.raises(InvalidMatchingError) as info:
        simulate(p4, s)
    assert info.value.round_index == 2
    assert str(info.value).startswith("Round 2:")


def test_simulate_needs_matching_vertex_count(p4):
    with pytest.raises(InvalidParameterError):
        simulate(p4, Strategy(5, ()))


def test_initial_state_counts_edges(c4):
    report = simulate(c4, Strategy(4, ()))
    assert report.met_counts == (4,)
    assert report.never_met == ((0, 2), (1, 3))
    assert report.final_placement == (0, 1, 2, 3)


def test_complete_graph_needs_no_rounds(k4):
    assert verify_acquaintance(k4, Strategy(4, ())) == (True, [])


def test_merge_rounds_pads_and_rejects_overlap():
    merged = merge_rounds([[(0, 1)], [(2, 3)]], [[(4, 5)]])
    assert merged == [((0, 1), (4, 5)), ((2, 3),)]
    with pytest.raises(StrategyCompositionError):
        merge_rounds([[(0, 1)]], [[(1, 2)]])


def test_parallel_compose_and_concat():
    g = family("path", 6)
    left = Strategy.from_rounds(6, [[(0, 1)], [(1, 2)]])
    right = Strategy.from_rounds(6, [[(4, 5)]])
    both = parallel_compose(left, right)
    assert both.rounds == (((0, 1), (4, 5)), ((1, 2),))
    simulate(g, both)
    assert len(concat(left, right)) == 3
    with pytest.raises(StrategyCompositionError):
        concat(left, Strategy(5, ()))


def test_relabel_moves_rounds():
    s = Strategy.from_rounds(3, [[(0, 1)], [(1, 2)]])
    moved = relabel(s, [2, 0, 1])
    assert moved.rounds == (((0, 2),), ((0, 1),))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_met_counts_never_decrease(data):
    g = data.draw(connected_graphs(max_n=7))
    s = Strategy.from_rounds(g.n, data.draw(strategies_for(g)))
    report = simulate(g, s)
    assert report.met_counts[0] == g.m
    assert all(a <= b for a, b in zip(report.met_counts, report.met_counts[1:]))
    assert report.met_counts[-1] + len(report.never_met) == g.n * (g.n - 1) // 2
    assert sorted(report.final_placement) == list(range(g.n))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_reversed_witness_is_a_witness(data):
    g = data.draw(connected_graphs(max_n=6))
    s = Strategy.from_rounds(g.n, data.draw(strategies_for(g, max_rounds=8)))
    if verify_acquaintance(g, s)[0]:
        assert verify_acquaintance(g, reverse(s))[0]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_strategy_then_its_reverse_returns_every_agent_home(data):
    g = data.draw(connected_graphs(max_n=7))
    s = Strategy.from_rounds(g.n, data.draw(strategies_for(g)))
    state = AcquaintanceState.initial(g)
    for m in concat(s, reverse(s)).rounds:
        state = apply_round(state, g, m)
    assert state.placement.is_identity()
    assert simulate(g, concat(s, reverse(s))).final_placement == tuple(range(g.n))
