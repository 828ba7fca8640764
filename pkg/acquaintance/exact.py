# acquaintance/exact.py - Exhaustive acquaintance time for small graphs
import logging
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from acquaintance.dynamics import verify_acquaintance
from acquaintance.graph_core import require_connected
from config import Config
from models import ExactResult, Graph, Matching, SizeCapExceededError, Strategy

logger = logging.getLogger(__name__)


class SearchNode(NamedTuple):
    """Agents by vertex, met pairs as a bitmask over a*n+b (a < b), rounds played."""

    placement: Tuple[int, ...]
    met: int
    depth: int


def enumerate_matchings(g: Graph) -> Iterator[Matching]:
    """Every nonempty matching once, ordered by size and then lexicographically."""
    edges = g.sorted_edges
    found: List[Matching] = []

    def extend(start, used, chosen):
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(edges[i])
            found.append(tuple(chosen))
            extend(i + 1, used | {u, v}, chosen)
            chosen.pop()

    extend(0, frozenset(), [])
    found.sort(key=lambda m: (len(m), m))
    yield from found


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.edges = g.sorted_edges
        self.matchings = list(enumerate_matchings(g))
        self.full = 0
        for a in range(self.n):
            for b in range(a + 1, self.n):
                self.full |= 1 << (a * self.n + b)
        self.memo: Dict[Tuple[Tuple[int, ...], int], int] = {}
        self.expanded = 0

    def sweep(self, agent_at: Tuple[int, ...], met: int) -> int:
        for u, v in self.edges:
            a, b = agent_at[u], agent_at[v]
            if a > b:
                a, b = b, a
            met |= 1 << (a * self.n + b)
        return met

    def start(self) -> SearchNode:
        placement = tuple(range(self.n))
        return SearchNode(placement, self.sweep(placement, 0), 0)

    def child(self, node: SearchNode, m: Matching) -> SearchNode:
        agent_at = list(node.placement)
        for u, v in m:
            agent_at[u], agent_at[v] = agent_at[v], agent_at[u]
        placement = tuple(agent_at)
        return SearchNode(placement, self.sweep(placement, node.met), node.depth + 1)

    def solve(self, node: SearchNode, remaining: int) -> Optional[List[Matching]]:
        if node.met == self.full:
            return []
        if remaining == 0:
            return None
        # a round adds at most |E| new pairs
        unmet = bin(self.full & ~node.met).count("1")
        if unmet > self.g.m * remaining:
            return None
        key = (node.placement, node.met)
        if self.memo.get(key, -1) >= remaining:
            return None
        self.expanded += 1
        for m in self.matchings:
            rest = self.solve(self.child(node, m), remaining - 1)
            if rest is not None:
                return [m, *rest]
        self.memo[key] = remaining
        return None


def exact_ac(g: Graph, max_rounds: Optional[int] = None, max_vertices: Optional[int] = None) -> ExactResult:
    """Minimum number of rounds by iterative deepening, with the least witness at that depth."""
    max_rounds = Config.EXACT_MAX_ROUNDS if max_rounds is None else max_rounds
    max_vertices = Config.EXACT_MAX_VERTICES if max_vertices is None else max_vertices
    if g.n > max_vertices:
        raise SizeCapExceededError(f"Exact search is capped at {max_vertices} vertices, graph has {g.n}")
    require_connected(g)

    search = _Search(g)
    root = search.start()
    for depth in range(0, max_rounds + 1):
        rounds = search.solve(root, depth)
        if rounds is None:
            logger.debug(f"exact_ac: no witness of length {depth} ({search.expanded} nodes expanded)")
            continue
        witness = Strategy(g.n, tuple(rounds), {"generator": "exact", "params": {"max_rounds": max_rounds}})
        ok, missing = verify_acquaintance(g, witness)
        if not ok:
            raise AssertionError(f"exact_ac produced a witness leaving {missing} unmet")
        logger.info(f"exact_ac: AC = {depth} on n={g.n}, m={g.m}")
        return ExactResult(depth, witness)
    logger.info(f"exact_ac: AC > {max_rounds} on n={g.n}, m={g.m}")
    return ExactResult(None, None, exceeded=True)
