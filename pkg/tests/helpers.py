# tests/helpers.py - Graph builders and hypothesis strategies shared by the tests
import numpy as np
from hypothesis import strategies as st

from acquaintance.dynamics import reverse, verify_acquaintance
from acquaintance.graph_core import generate
from models import Family, FamilySpec, Graph


def family(name, *params, seed=None):
    return generate(FamilySpec(Family(name), tuple(params), seed=seed))


def random_tree_edges(n, rng):
    return [(int(rng.integers(v)), v) for v in range(1, n)]


def random_connected(n, p, seed):
    """Random spanning tree plus each other pair with probability p."""
    rng = np.random.default_rng(seed)
    edges = set(random_tree_edges(n, rng))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def small_graph_pool(count, max_n=6, seed=0):
    rng = np.random.default_rng(seed)
    pool = []
    for index in range(count):
        n = int(rng.integers(2, max_n + 1))
        p = float(rng.uniform(0.0, 0.8))
        pool.append(random_connected(n, p, seed + 1000 + index))
    return pool


def assert_witness(g, s):
    ok, missing = verify_acquaintance(g, s)
    assert ok, f"{s.generator} left {missing[:5]} unmet"
    ok, missing = verify_acquaintance(g, reverse(s))
    assert ok, f"reversed {s.generator} left {missing[:5]} unmet"


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = {(draw(st.integers(min_value=0, max_value=v - 1)), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()) and draw(st.booleans()):
                edges.add((u, v))
    return Graph.from_edges(n, edges)


@st.composite
def strategies_for(draw, g, max_rounds=6):
    """Random rounds of g, each a greedy matching over a drawn edge order."""
    rounds = []
    for _ in range(draw(st.integers(min_value=0, max_value=max_rounds))):
        order = draw(st.permutations(list(g.sorted_edges))) if g.m else []
        used, m = set(), []
        for u, v in order:
            if u not in used and v not in used and draw(st.booleans()):
                m.append((u, v))
                used.update((u, v))
        rounds.append(m)
    return rounds
