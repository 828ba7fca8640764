# acquaintance/routing.py - Routing a set of agents between vertex sets of a tree
import logging
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple

import networkx as nx

from models import Edge, InvalidParameterError, RoutingTask, Strategy, normalize_edge

logger = logging.getLogger(__name__)

Rounds = List[List[Edge]]


def _tree_graph(adjacency: Mapping[int, Sequence[int]]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(sorted(adjacency))
    graph.add_edges_from((u, v) for u in sorted(adjacency) for v in adjacency[u] if u < v)
    return graph


def _span(graph: nx.Graph, vertices: Set[int]) -> Set[int]:
    """Minimal subtree containing vertices."""
    root = min(vertices)
    parent = dict(nx.bfs_predecessors(graph, root))
    span = {root}
    for v in vertices:
        while v not in span:
            span.add(v)
            v = parent[v]
    return span


def _span_leaf(graph: nx.Graph, span: Set[int]) -> int:
    if len(span) == 1:
        return next(iter(span))
    return min(v for v in span if sum(1 for w in graph[v] if w in span) == 1)


def _plan(graph: nx.Graph, sources: Set[int], targets: Set[int]) -> List[Tuple]:
    """Reduce (S, T) one agent at a time, recording how each step was made."""
    ops = []
    S, T = set(sources), set(targets)
    while S:
        span_t = _span(graph, T)
        outside = S - span_t
        if outside:
            to_t = nx.multi_source_dijkstra_path_length(graph, T)
            s_star = min(outside, key=lambda s: (-to_t[s], s))
            from_s = nx.single_source_shortest_path_length(graph, s_star)
            t_star = min(T, key=lambda t: (from_s[t], t))
            ops.append(("walk", nx.shortest_path(graph, s_star, t_star)))
            S.discard(s_star)
            T.discard(t_star)
            continue
        span_s = _span(graph, S)
        if T - span_s:
            ops.append(("flip",))
            S, T = T, S
            continue
        # equal spans: a leaf of the span is in both sets and its agent stays
        x = _span_leaf(graph, span_s)
        ops.append(("stay",))
        S.discard(x)
        T.discard(x)
    return ops


def route_on_adjacency(adjacency: Mapping[int, Sequence[int]], sources: Iterable[int], targets: Iterable[int]) -> Rounds:
    """Rounds moving the agents on sources onto targets through a tree.

    Returns exactly ell + 2(k-1) rounds (some possibly empty), where ell is the
    largest source-target distance. Agents off the sources are moved around
    only as the swaps require.
    """
    S, T = set(sources), set(targets)
    if len(S) != len(T):
        raise InvalidParameterError(f"Routing needs |S| = |T|, got {len(S)} and {len(T)}")
    if not S:
        return []
    graph = _tree_graph(adjacency)
    ell = 0
    for s in S:
        lengths = nx.single_source_shortest_path_length(graph, s)
        ell = max(ell, max(lengths[t] for t in T))

    ops = _plan(graph, S, T)
    # build from the innermost task outwards; the empty task has length ell - 2
    length = ell - 2
    moves: Dict[int, List[Edge]] = {}
    for op in reversed(ops):
        if op[0] == "walk":
            path = op[1]
            r = len(path) - 2
            for i in range(r + 1):
                moves.setdefault(length - r + i + 2, []).append(normalize_edge(path[i], path[i + 1]))
            length += 2
        elif op[0] == "stay":
            length += 2
        else:
            moves = {length + 1 - index: edges for index, edges in moves.items()}
    rounds = [sorted(moves.get(index, [])) for index in range(1, length + 1)]
    logger.debug(f"Routed k={len(S)} agents with ell={ell} in {len(rounds)} rounds")
    return rounds


def route_on_tree(task: RoutingTask) -> Strategy:
    adjacency = {v: task.tree.graph.adjacency[v] for v in range(task.tree.n)}
    rounds = route_on_adjacency(adjacency, task.sources, task.targets)
    return Strategy.from_rounds(
        task.tree.n,
        rounds,
        drop_empty=True,
        generator="route_on_tree",
        params={"k": task.k, "ell": task.ell},
    )
