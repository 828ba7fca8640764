# acquaintance/hardness.py - Witness-carrying instance generators from colorings and doubling
import logging
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from models import ColoredGraph, Graph, InvalidParameterError, Matching, Strategy, normalize_matching

logger = logging.getLogger(__name__)


def reduce(cg: ColoredGraph, t: int) -> Tuple[Graph, Strategy]:
    """Graph H on (t+1)n vertices with a t-round witness built from the coloring.

    Vertices 0..n-1 carry the complement of G. Block (i, j) for round i and
    color j holds n/K independent vertices starting at n + (iK + j)(n/K);
    blocks are complete to each other and to the first part.
    """
    cg.validate()
    if t < 1:
        raise InvalidParameterError(f"Number of rounds t must be >= 1, got {t}")
    g, k = cg.graph, cg.k
    n = g.n
    size = n // k

    def block(i, j):
        start = n + (i * k + j) * size
        return list(range(start, start + size))

    edges: List[Tuple[int, int]] = [
        (u, v) for u, v in combinations(range(n), 2) if not g.has_edge(u, v)
    ]
    total = (t + 1) * n
    edges.extend((v, u) for v in range(n) for u in range(n, total))
    for (i1, j1), (i2, j2) in combinations([(i, j) for i in range(t) for j in range(k)], 2):
        edges.extend((a, b) for a in block(i1, j1) for b in block(i2, j2))
    h = Graph.from_edges(total, edges)

    classes = cg.classes()
    rounds = []
    for i in range(t):
        rounds.append(normalize_matching(
            (u, v) for j in range(k) for u, v in zip(block(i, j), classes[j])
        ))
    witness = Strategy(total, tuple(rounds), {"generator": "reduce", "params": {"t": t, "k": k}})
    logger.info(f"reduce: n={n}, K={k}, t={t} -> H with {h.n} vertices and {h.m} edges")
    return h, witness


def ramsey_double(h: Graph, rule: str = "deterministic", seed: Optional[int] = None) -> Tuple[Graph, Matching]:
    """Copy of h, its complement on the copies u'_i, rungs u_i-u'_i and one cross edge per pair.

    u_i is vertex i and u'_i is vertex m + i. The rungs form a 1-round witness.
    """
    if rule not in ("deterministic", "seeded"):
        raise InvalidParameterError(f"Unsupported doubling rule: {rule}")
    m = h.n
    rng = np.random.default_rng(seed)
    edges = list(h.sorted_edges)
    edges.extend((m + u, m + v) for u, v in combinations(range(m), 2) if not h.has_edge(u, v))
    rungs = [(i, m + i) for i in range(m)]
    edges.extend(rungs)
    for i, j in combinations(range(m), 2):
        if rule == "deterministic" or rng.random() < 0.5:
            edges.append((i, m + j))
        else:
            edges.append((j, m + i))
    g = Graph.from_edges(2 * m, edges)
    logger.debug(f"ramsey_double: {m} -> {g.n} vertices, {g.m} edges ({rule})")
    return g, normalize_matching(rungs)


def plant_equicolorable(n: int, k: int, p: float, seed: Optional[int] = None) -> ColoredGraph:
    """Random graph with a planted equitable k-coloring; cross-class pairs kept with probability p."""
    if k < 1 or n < 1 or n % k:
        raise InvalidParameterError(f"Color count {k} must divide n={n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"Edge probability {p} is outside [0, 1]")
    rng = np.random.default_rng(seed)
    coloring = np.empty(n, dtype=np.intp)
    coloring[rng.permutation(n)] = np.arange(n) % k
    rows, cols = np.triu_indices(n, k=1)
    keep = (coloring[rows] != coloring[cols]) & (rng.random(len(rows)) < p)
    g = Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))
    cg = ColoredGraph(g, k, tuple(int(c) for c in coloring))
    cg.validate()
    return cg
