# tests/test_graph_core.py
import pytest
from hypothesis import given, settings

from acquaintance.graph_core import (
    bfs_tree,
    bipartite_sides,
    detect_family,
    diameter,
    distances,
    family_hamiltonian_path,
    generate,
    is_hamiltonian_path,
    is_simple_path,
    long_path,
    max_k_with_self_power,
    require_connected,
    spanning_tree,
    tree_containing_path,
)
from models import DisconnectedGraphError, Family, FamilySpec, Graph, InvalidParameterError, SearchExhaustedError
from tests.helpers import connected_graphs, family


def test_path_numbering(p4):
    assert p4.n == 4
    assert p4.sorted_edges == ((0, 1), (1, 2), (2, 3))


def test_cycle_needs_three_vertices():
    with pytest.raises(InvalidParameterError):
        family("cycle", 2)


def test_family_sizes():
    assert family("kbip", 2, 3).m == 6
    cube = family("hypercube", 3)
    assert (cube.n, cube.m) == (8, 12)
    assert all(cube.degree(v) == 3 for v in range(8))
    tree = family("bintree", 2)
    assert tree.sorted_edges == ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6))
    barbell = family("barbell", 3)
    assert (barbell.n, barbell.m) == (6, 7)
    assert barbell.has_edge(2, 3)
    assert family("ring", 4, 3).m == 24
    assert family("ring", 2, 3).m == 9
    octopus = family("octopus", 3, 2)
    assert (octopus.n, octopus.m) == (7, 6)
    assert octopus.adjacency[6] == (0, 2, 4)


def test_bad_parameters():
    with pytest.raises(InvalidParameterError):
        family("path", 0)
    with pytest.raises(InvalidParameterError):
        family("kbip", 3)
    with pytest.raises(InvalidParameterError):
        family("gnp", 5, 1.5)


def test_gnp_is_connected_and_reproducible():
    first = family("gnp", 12, 0.4, seed=3)
    second = family("gnp", 12, 0.4, seed=3)
    assert first == second
    require_connected(first)


def test_gnp_gives_up_when_never_connected():
    with pytest.raises(SearchExhaustedError):
        family("gnp", 3, 0.0, seed=1)


def test_disconnected_graph_names_two_vertices():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError) as info:
        require_connected(g)
    assert (info.value.u, info.value.v) == (0, 2)
    with pytest.raises(DisconnectedGraphError):
        diameter(g)


def test_distances_and_diameter():
    g = family("path", 5)
    assert distances(g, 0) == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4}
    assert diameter(g) == 4
    assert diameter(family("complete", 1)) == 0


def test_spanning_tree_is_bfs_from_zero(c4):
    tree = spanning_tree(c4)
    assert tree.root == 0
    assert tree.parent == (-1, 0, 1, 0)
    assert tree.depth == (0, 1, 2, 1)


def test_tree_containing_path_keeps_path_edges():
    g = family("gnp", 15, 0.3, seed=2)
    path = long_path(g, seed=2)
    tree = tree_containing_path(g, path)
    for u, v in zip(path, path[1:]):
        assert tree.graph.has_edge(u, v)


def test_long_path_on_path_is_hamiltonian():
    g = family("path", 9)
    assert is_hamiltonian_path(g, long_path(g))


def test_long_path_on_star(star):
    path = long_path(star)
    assert is_simple_path(star, path)
    assert len(path) == 3


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=10))
def test_long_path_is_simple_and_not_shorter_than_tree_depth(g):
    path = long_path(g, effort=200, seed=1)
    assert is_simple_path(g, path)
    assert len(path) - 1 >= max(bfs_tree(g, 0).depth)


@pytest.mark.parametrize(
    "name,params",
    [
        ("path", (5,)),
        ("cycle", (5,)),
        ("complete", (4,)),
        ("barbell", (3,)),
        ("hypercube", (3,)),
        ("ring", (3, 3)),
        ("ring", (2, 2)),
        ("kbip", (3, 3)),
        ("kbip", (3, 2)),
        ("kbip", (2, 3)),
        ("bintree", (1,)),
    ],
)
def test_family_hamiltonian_paths(name, params):
    spec = FamilySpec(Family(name), params)
    assert is_hamiltonian_path(generate(spec), family_hamiltonian_path(spec))


def test_families_without_hamiltonian_path():
    assert family_hamiltonian_path(FamilySpec(Family.OCTOPUS, (3, 2))) is None
    assert family_hamiltonian_path(FamilySpec(Family.BINARY_TREE, (2,))) is None


@pytest.mark.parametrize(
    "name,params",
    [
        ("path", (5,)),
        ("cycle", (5,)),
        ("hypercube", (3,)),
        ("bintree", (3,)),
        ("barbell", (4,)),
        ("ring", (3, 4)),
        ("octopus", (3, 3)),
    ],
)
def test_detect_family(name, params):
    spec = FamilySpec(Family(name), params)
    assert detect_family(generate(spec)) == spec


def test_detect_relabeled_complete_bipartite():
    g = Graph.from_edges(5, [(0, 2), (0, 4), (1, 2), (1, 4), (3, 2), (3, 4)])
    assert detect_family(g) == FamilySpec(Family.COMPLETE_BIPARTITE, (3, 2))
    assert bipartite_sides(g) == ((0, 1, 3), (2, 4))
    assert detect_family(family("complete", 4)) == FamilySpec(Family.COMPLETE, (4,))


@pytest.mark.parametrize("n,k", [(1, 1), (3, 1), (4, 2), (26, 2), (27, 3), (255, 3), (256, 4)])
def test_max_k_with_self_power(n, k):
    assert max_k_with_self_power(n) == k
