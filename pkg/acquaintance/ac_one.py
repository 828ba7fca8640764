# acquaintance/ac_one.py - Graphs with acquaintance time one: audits, partitions and strategies
import logging
import math
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from acquaintance.dynamics import verify_acquaintance
from acquaintance.graph_core import log2_ceil, require_connected
from acquaintance.strategies import StrategyRecorder
from config import Config
from models import (
    AcOnePartition,
    AcquaintanceCertificate,
    AcquaintanceState,
    Edge,
    Graph,
    InvalidParameterError,
    Matching,
    SearchExhaustedError,
    Strategy,
    StructureAudit,
    normalize_edge,
    normalize_matching,
)

logger = logging.getLogger(__name__)


def verify_partition(g: Graph, p: AcOnePartition) -> Tuple[bool, Optional[str]]:
    """Check the five partition conditions; on success the pair matching must be a 1-round witness."""
    p.check_covers(g.n)
    for a, b in p.pairs:
        if not g.has_edge(a, b):
            return False, f"pair ({a}, {b}) is not an edge"
    for (a1, b1), (a2, b2) in combinations(p.pairs, 2):
        if not (g.has_edge(a1, b2) or g.has_edge(a2, b1)):
            return False, f"pairs ({a1}, {b1}) and ({a2}, {b2}) have no crossing edge"
        if not (g.has_edge(a1, a2) or g.has_edge(b1, b2)):
            return False, f"pairs ({a1}, {b1}) and ({a2}, {b2}) have no parallel edge"
    for c1, c2 in combinations(sorted(p.rest), 2):
        if not g.has_edge(c1, c2):
            return False, f"rest vertices {c1} and {c2} are not adjacent"
    for c in sorted(p.rest):
        for a, b in p.pairs:
            if not (g.has_edge(c, a) or g.has_edge(c, b)):
                return False, f"rest vertex {c} sees neither {a} nor {b}"
    ok, missing = verify_acquaintance(g, Strategy(g.n, (normalize_matching(p.pairs),)))
    if not ok:
        return False, f"pair matching leaves {len(missing)} pairs unmet"
    return True, None


def high_degree_set(g: Graph) -> Tuple[int, ...]:
    """Vertices with deg(v) >= n/2."""
    return tuple(v for v in range(g.n) if 2 * g.degree(v) >= g.n)


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    if g.m:
        edges = g.edge_array
        a[edges[:, 0], edges[:, 1]] = 1
        a[edges[:, 1], edges[:, 0]] = 1
    return a


def _neighborhood_violation(g: Graph) -> Optional[Edge]:
    """First pair u < v of high-degree vertices with small common and sparse joint neighborhoods."""
    n = g.n
    high = high_degree_set(g)
    if len(high) < 2:
        return None
    a = _adjacency_matrix(g)
    common = a @ a
    walks = common @ a
    for u, v in combinations(high, 2):
        if 10 * common[u, v] >= n:
            continue
        shared = np.flatnonzero(a[u] & a[v])
        # edges with one end in N(u) and the other in N(v), each counted once
        joint = int(walks[u, v]) - int(a[np.ix_(shared, shared)].sum()) // 2
        if 100 * joint < n * n:
            return (u, v)
    return None


def structure_audit(g: Graph, partition: Optional[AcOnePartition] = None) -> StructureAudit:
    n = g.n
    high_count = sum(1 for v in range(n) if g.degree(v) >= math.ceil(n / 2))
    graph = g.to_networkx()
    # a greedy matching of size n//2 is already maximum
    matching = nx.maximal_matching(graph)
    if len(matching) < n // 2:
        matching = nx.max_weight_matching(graph, maxcardinality=True)
    violation = _neighborhood_violation(g)
    degree_sum_ok = c_degree_ok = pair_edges_ok = None
    if partition is not None:
        partition.check_covers(n)
        k, rest = partition.k, sorted(partition.rest)
        degree_sum_ok = all(g.degree(a) + g.degree(b) >= n for a, b in partition.pairs)
        c_degree_ok = all(g.degree(c) >= k + len(rest) - 1 for c in rest)
        side_a = [a for a, _ in partition.pairs]
        side_b = [b for _, b in partition.pairs]
        crossing = sum(1 for x in side_a for y in side_b if g.has_edge(x, y))
        pair_edges_ok = 2 * crossing >= k * k + k
    audit = StructureAudit(
        n=n,
        edge_count=g.m,
        edge_count_ok=4 * g.m >= n * n - 1,
        high_degree_count=high_count,
        high_degree_ok=high_count >= n // 2,
        matching_size=len(matching),
        perfect_matching_ok=len(matching) >= n // 2,
        neighborhood_ok=violation is None,
        neighborhood_violation=violation,
        degree_sum_ok=degree_sum_ok,
        c_degree_ok=c_degree_ok,
        pair_edges_ok=pair_edges_ok,
    )
    if audit.certifies:
        logger.info(f"structure_audit: AC >= 2 certified on n={n}: {'; '.join(audit.certificate_failures())}")
    return audit


def _saturating(g: Graph, side_a: Iterable[int], side_b: Iterable[int]) -> Optional[List[Edge]]:
    """Matching covering all of side_b inside the bipartite graph of g between the sides."""
    side_a, side_b = sorted(side_a), sorted(side_b)
    if not side_b:
        return []
    bipartite = nx.Graph()
    bipartite.add_nodes_from(side_b)
    bipartite.add_nodes_from(side_a)
    in_a = set(side_a)
    bipartite.add_edges_from((b, w) for b in side_b for w in g.adjacency[b] if w in in_a)
    matched = nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=side_b)
    if any(b not in matched for b in side_b):
        return None
    return [normalize_edge(b, matched[b]) for b in side_b]


def transfer_matching(g: Graph, U: Iterable[int], W: Iterable[int], strict: bool = True) -> Matching:
    """Maximum matching between W and U; in strict mode anything below |W|-1 certifies AC >= 2."""
    targets, movers = set(U), sorted(set(W))
    if targets & set(movers):
        raise InvalidParameterError(f"Transfer sets overlap at {sorted(targets & set(movers))}")
    if not movers:
        return ()
    bipartite = nx.Graph()
    bipartite.add_nodes_from(movers)
    bipartite.add_nodes_from(sorted(targets))
    bipartite.add_edges_from((w, u) for w in movers for u in g.adjacency[w] if u in targets)
    matched = nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=movers)
    pairs = normalize_matching((w, matched[w]) for w in movers if w in matched)
    if strict and len(pairs) < len(movers) - 1:
        raise AcquaintanceCertificate(f"only {len(pairs)} of {len(movers)} vertices can move into the high-degree set")
    return pairs


def meet_all_matching(g: Graph, v: int) -> Optional[Matching]:
    """One round after which the agent now at v has met every other agent, or None."""
    near = set(g.adjacency[v])
    far = set(range(g.n)) - near - {v}
    found = _saturating(g, near, far)
    if found is not None:
        return normalize_matching(found)
    for u in sorted(near):
        around_u = set(g.adjacency[u])
        found = _saturating(g, near & around_u, set(range(g.n)) - near - around_u)
        if found is not None:
            return normalize_matching([*found, (v, u)])
    return None


def _completing_round(g: Graph, state: AcquaintanceState, agents: List[int]) -> Optional[Matching]:
    """Search the moves of the given agents' vertices for a round meeting every residual pair."""
    unmet = [(a, b) for a, b in combinations(agents, 2) if not state.met[a, b]]
    pos = {a: state.position(a) for a in agents}
    order = [pos[a] for a in agents]
    target: Dict[int, int] = {}
    chosen: List[Edge] = []

    def consistent() -> bool:
        return all(
            g.has_edge(target[pos[a]], target[pos[b]])
            for a, b in unmet
            if pos[a] in target and pos[b] in target
        )

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        if x in target:
            return search(i + 1)
        for y in (x, *g.adjacency[x]):
            if y in target:
                continue
            target[x] = y
            target[y] = x
            if y != x:
                chosen.append(normalize_edge(x, y))
            if consistent() and search(i + 1):
                return True
            if y != x:
                chosen.pop()
            del target[x]
            target.pop(y, None)
        return False

    return normalize_matching(chosen) if search(0) else None


def _certify(g: Graph) -> StructureAudit:
    audit = structure_audit(g)
    if audit.certifies:
        raise AcquaintanceCertificate("; ".join(audit.certificate_failures()))
    return audit


def deterministic_strategy(g: Graph, c: int = 1) -> Strategy:
    """At most n - c rounds on a graph with acquaintance time one.

    Agents meet everyone one at a time; the last c + 1 agents are finished by
    a single round found by exhaustive search.
    """
    if not 1 <= c <= Config.FINAL_PHASE_MAX_C:
        raise InvalidParameterError(f"c must be in 1..{Config.FINAL_PHASE_MAX_C}, got {c}")
    require_connected(g)
    _certify(g)
    rec = StrategyRecorder(g)
    n = g.n

    def meet_all(agent):
        v = rec.state.position(agent)
        m = meet_all_matching(g, v)
        if m is None:
            raise AcquaintanceCertificate(f"no single round lets the agent at vertex {v} meet everyone")
        rec.play(m)

    for agent in range(max(0, n - c - 1)):
        if rec.state.all_met:
            break
        if not rec.state.agent_done(agent):
            meet_all(agent)

    final_phase = "skipped"
    if not rec.state.all_met:
        residual = [a for a in range(n) if not rec.state.agent_done(a)]
        m = _completing_round(g, rec.state, residual)
        if m is not None:
            rec.play(m)
            final_phase = "search"
        else:
            logger.warning(f"deterministic_strategy: final phase over {len(residual)} agents failed, continuing one by one")
            final_phase = "fallback"
            for agent in range(max(0, n - c - 1), n - 1):
                if rec.state.all_met:
                    break
                if not rec.state.agent_done(agent):
                    meet_all(agent)
    logger.info(f"deterministic_strategy: {len(rec.rounds)} rounds on n={n} (c={c}, final phase {final_phase})")
    return rec.strategy("deterministic", extra={"final_phase": final_phase}, c=c)


def random_matching(g: Graph, U: Iterable[int], seed) -> Matching:
    """Random proposals from U, accepted greedily in a random order.

    Each u proposes itself with probability 1/2, else a uniform neighbor. A
    proposal is taken when neither endpoint is used yet; stays also use u.
    """
    rng = np.random.default_rng(seed)
    members = sorted(U)
    proposals = {}
    for u in members:
        nbrs = g.adjacency[u]
        if rng.random() < 0.5 or not nbrs:
            proposals[u] = u
        else:
            proposals[u] = nbrs[int(rng.integers(len(nbrs)))]
    used = set()
    accepted = []
    for index in rng.permutation(len(members)):
        u = members[int(index)]
        w = proposals[u]
        if u in used or w in used:
            continue
        used.update((u, w))
        if w != u:
            accepted.append((u, w))
    return normalize_matching(accepted)


def _randomized_attempt(g: Graph, high: Tuple[int, ...], seed: int, round_cap: int) -> Strategy:
    rng = np.random.default_rng(seed)
    rec = StrategyRecorder(g)
    n = g.n
    in_high = set(high)
    size = max(1, len(high) // 2)
    groups = [list(range(start, min(start + size, n))) for start in range(0, n, size)]
    combos = list(combinations(range(len(groups)), 2)) or [(0,)]
    phases = 0
    for combo in combos:
        if rec.state.all_met:
            break
        agents = sorted(a for i in combo for a in groups[i])
        if rec.state.group_met(agents):
            continue
        phases += 1
        inside = {rec.state.position(a) for a in agents} & in_high
        outside = [rec.state.position(a) for a in agents if rec.state.position(a) not in in_high]
        transfer = transfer_matching(g, in_high - inside, outside, strict=False)
        rec.play(transfer)
        for a in agents:
            v = rec.state.position(a)
            if v in in_high:
                continue
            m = meet_all_matching(g, v)
            if m is None:
                raise AcquaintanceCertificate(f"no single round lets the agent at vertex {v} meet everyone")
            # the second play returns every displaced agent
            rec.play(m)
            rec.play(m)
        used = 0
        while not rec.state.group_met(agents):
            if used >= round_cap:
                raise SearchExhaustedError(f"group pair {combo} not acquainted within {round_cap} double rounds")
            m = random_matching(g, high, rng)
            rec.play(m)
            rec.play(m)
            used += 1
        rec.play(transfer)
    return rec.strategy("randomized", extra={"phases": phases, "groups": len(groups)}, seed=seed)


def randomized_strategy(g: Graph, seed: Optional[int] = None, round_cap: Optional[int] = None) -> Strategy:
    """O(log n) rounds with high probability on graphs with acquaintance time one."""
    require_connected(g)
    _certify(g)
    seed = Config.DEFAULT_SEED if seed is None else seed
    n = g.n
    round_cap = Config.RANDOM_ROUND_FACTOR * log2_ceil(n) if round_cap is None else round_cap
    high = high_degree_set(g)
    if len(high) < n // 2:
        raise AcquaintanceCertificate(f"only {len(high)} vertices have degree >= n/2")
    if AcquaintanceState.initial(g).all_met:
        return Strategy(n, (), {"generator": "randomized", "params": {"seed": seed}})
    for attempt in range(Config.RANDOM_RESTARTS):
        try:
            s = _randomized_attempt(g, high, seed + attempt, round_cap)
        except SearchExhaustedError as e:
            logger.warning(f"randomized_strategy: seed {seed + attempt} failed: {e}")
            continue
        ok, missing = verify_acquaintance(g, s)
        if ok:
            logger.info(f"randomized_strategy: {len(s)} rounds on n={n} with seed {seed + attempt}")
            return s
        logger.warning(f"randomized_strategy: seed {seed + attempt} left {len(missing)} pairs unmet")
    raise SearchExhaustedError(f"No strategy within {Config.RANDOM_RESTARTS} restarts from seed {seed}")
