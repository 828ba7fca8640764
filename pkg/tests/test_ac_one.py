# tests/test_ac_one.py
import math

import numpy as np
import pytest

from acquaintance.ac_one import (
    deterministic_strategy,
    high_degree_set,
    meet_all_matching,
    random_matching,
    randomized_strategy,
    structure_audit,
    transfer_matching,
    verify_partition,
)
from acquaintance.dynamics import validate_matching, verify_acquaintance
from acquaintance.exact import exact_ac
from acquaintance.hardness import plant_equicolorable, ramsey_double, reduce
from models import AcOnePartition, AcquaintanceCertificate, Graph, InvalidParameterError, SearchExhaustedError
from tests.helpers import family, small_graph_pool


def _ac_one_graphs():
    graphs = [family("cycle", 4), Graph.from_edges(4, [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)])]
    graphs.extend(g for g in small_graph_pool(80, max_n=6, seed=5) if exact_ac(g).value == 1)
    return graphs


def test_partition_on_cycle(c4):
    good = AcOnePartition(((0, 1),), frozenset({2, 3}))
    assert verify_partition(c4, good) == (True, None)
    ok, reason = verify_partition(c4, AcOnePartition(((0, 1), (2, 3))))
    assert not ok
    assert "parallel" in reason


def test_partition_must_cover_vertices(c4):
    with pytest.raises(InvalidParameterError):
        verify_partition(c4, AcOnePartition(((0, 1),), frozenset({2})))
    with pytest.raises(InvalidParameterError):
        verify_partition(c4, AcOnePartition(((0, 1), (1, 2)), frozenset({3})))


def test_partition_rejects_non_edge_pair(c4):
    ok, reason = verify_partition(c4, AcOnePartition(((0, 2),), frozenset({1, 3})))
    assert not ok
    assert "not an edge" in reason


def test_high_degree_set(p4, k4):
    assert high_degree_set(p4) == (1, 2)
    assert high_degree_set(k4) == (0, 1, 2, 3)


def test_audit_certifies_sparse_graphs():
    audit = structure_audit(family("path", 6))
    assert audit.certifies
    assert not audit.edge_count_ok
    assert any("edge count" in reason for reason in audit.certificate_failures())


def test_audit_passes_complete_graph(k4):
    audit = structure_audit(k4)
    assert not audit.certifies
    assert audit.passed
    assert audit.to_dict()["passed"] is True


def test_audit_with_partition(c4):
    audit = structure_audit(c4, AcOnePartition(((0, 1),), frozenset({2, 3})))
    assert audit.degree_sum_ok is True
    assert audit.c_degree_ok is True
    assert audit.partition_failures() == []


def test_audit_never_certifies_an_ac_one_graph():
    for g in small_graph_pool(120, max_n=6, seed=9):
        if structure_audit(g).certifies:
            value = exact_ac(g).value
            assert value is None or value >= 2, f"audit certified AC >= 2 on {g.sorted_edges}, AC={value}"


def test_transfer_matching(star):
    with pytest.raises(AcquaintanceCertificate):
        transfer_matching(star, [0], [1, 2, 3, 4, 5])
    assert len(transfer_matching(star, [0], [1, 2, 3, 4, 5], strict=False)) == 1
    with pytest.raises(InvalidParameterError):
        transfer_matching(star, [0, 1], [1, 2])
    assert transfer_matching(star, [0], []) == ()


def test_meet_all_matching(p4, k4, c4):
    assert meet_all_matching(p4, 0) is None
    assert meet_all_matching(k4, 2) == ()
    assert meet_all_matching(c4, 0) in (((1, 2),), ((2, 3),))


def test_random_matching_stays_in_the_graph():
    g = family("gnp", 12, 0.6, seed=4)
    high = high_degree_set(g)
    for seed in range(10):
        m = random_matching(g, high, seed)
        assert validate_matching(g, m) is None
        assert all(u in high or v in high for u, v in m)


def test_random_matching_is_reproducible_on_complete_bipartite():
    g = family("kbip", 4, 4)
    high = high_degree_set(g)
    assert high == tuple(range(8))
    first = random_matching(g, high, 7)
    assert random_matching(g, high, 7) == first
    assert validate_matching(g, first) is None
    assert all(u < 4 <= v for u, v in first)
    assert len({random_matching(g, high, seed) for seed in range(20)}) > 1


def test_deterministic_strategy_on_cycle(c4):
    s = deterministic_strategy(c4)
    assert len(s) == 1
    assert verify_acquaintance(c4, s)[0]


@pytest.mark.parametrize("c", [1, 2, 3])
def test_deterministic_strategy_length(c):
    for g in _ac_one_graphs():
        s = deterministic_strategy(g, c=c)
        assert verify_acquaintance(g, s)[0]
        assert len(s) <= max(1, g.n - c)
        assert s.metadata["final_phase"] in ("search", "skipped")


def test_deterministic_strategy_checks_its_inputs(c4):
    with pytest.raises(InvalidParameterError):
        deterministic_strategy(c4, c=0)
    with pytest.raises(AcquaintanceCertificate):
        deterministic_strategy(family("path", 6))


def test_randomized_strategy_on_ac_one_graphs():
    for g in _ac_one_graphs():
        s = randomized_strategy(g, seed=3)
        assert verify_acquaintance(g, s)[0]


def test_randomized_strategy_on_doubled_graph():
    g, _ = ramsey_double(family("cycle", 5))
    s = randomized_strategy(g, seed=0)
    assert verify_acquaintance(g, s)[0]
    assert s.generator == "randomized"


def test_randomized_strategy_refuses_certified_graph():
    with pytest.raises(AcquaintanceCertificate):
        randomized_strategy(family("path", 6))


def _doubled(n, seed):
    g, _ = ramsey_double(family("gnp", n // 2, 0.5, seed=seed))
    return g


def _reduced(n, k, seed):
    h, _ = reduce(plant_equicolorable(n // 2, k, 0.5, seed=seed), 1)
    return h


@pytest.fixture(scope="module")
def ac_one_pool():
    """Generated graphs with a known one-round witness, keyed by vertex count."""
    pool = {}
    for n, k in [(10, 5), (20, 2), (50, 5), (64, 4), (100, 5), (128, 4), (200, 4), (256, 4)]:
        pool[n] = [_doubled(n, seed=n), _reduced(n, k, seed=n)]
    return pool


def test_doubled_graphs_pass_the_audit(ac_one_pool):
    for graphs in ac_one_pool.values():
        g = graphs[0]
        audit = structure_audit(g)
        assert not audit.certifies, audit.certificate_failures()
        assert 2 * len(high_degree_set(g)) >= g.n


def test_neighborhoods_of_large_ac_one_graphs(ac_one_pool):
    for n, graphs in ac_one_pool.items():
        if n < 50:
            continue
        for g in graphs:
            audit = structure_audit(g)
            assert audit.neighborhood_ok, f"n={n}: pair {audit.neighborhood_violation}"
            assert not audit.certifies


def test_deterministic_strategy_on_generated_instances(ac_one_pool):
    for n, graphs in ac_one_pool.items():
        if n > 200:
            continue
        for g in graphs:
            s = deterministic_strategy(g)
            assert verify_acquaintance(g, s)[0]
            assert len(s) <= g.n - 1
            if n <= 60:
                s = deterministic_strategy(g, c=2)
                assert verify_acquaintance(g, s)[0]
                assert len(s) <= g.n - 2


def test_randomized_strategy_rounds_grow_like_log_n(ac_one_pool):
    ratios = []
    for n in (64, 128, 256):
        lengths, failures = [], 0
        for g in ac_one_pool[n]:
            for seed in range(10):
                try:
                    s = randomized_strategy(g, seed=1000 * seed)
                except SearchExhaustedError:
                    failures += 1
                    continue
                assert verify_acquaintance(g, s)[0]
                lengths.append(len(s))
        assert failures <= 1, f"n={n}: {failures} of 20 seeds failed"
        ratios.append(float(np.median(lengths)) / math.log2(n))
    assert max(ratios) <= 16, ratios
