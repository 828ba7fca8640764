# acquaintance/graph_core.py - Graph families, distances, spanning trees and long paths
import logging
import math
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from config import Config
from models import (
    DisconnectedGraphError,
    Family,
    FamilySpec,
    Graph,
    InvalidParameterError,
    SearchExhaustedError,
    Tree,
)

logger = logging.getLogger(__name__)


def _require_sizes(spec: FamilySpec, arity: int):
    if len(spec.params) != arity:
        raise InvalidParameterError(f"{spec.family.value} takes {arity} parameter(s), got {len(spec.params)}")
    for value in spec.params:
        if not float(value).is_integer() or int(value) < 1:
            raise InvalidParameterError(f"{spec.label()}: size parameters must be integers >= 1")
    return [int(v) for v in spec.params]


def _cliques(r: int, ell: int) -> List[Tuple[int, int]]:
    edges = []
    for i in range(r):
        edges.extend(combinations(range(i * ell, (i + 1) * ell), 2))
    return edges


def _path(spec):
    (n,) = _require_sizes(spec, 1)
    return Graph.from_networkx(nx.path_graph(n))


def _cycle(spec):
    (n,) = _require_sizes(spec, 1)
    if n < 3:
        raise InvalidParameterError(f"A simple cycle needs at least 3 vertices, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def _complete(spec):
    (n,) = _require_sizes(spec, 1)
    return Graph.from_networkx(nx.complete_graph(n))


def _complete_bipartite(spec):
    a, b = _require_sizes(spec, 2)
    # side A is 0..a-1, side B is a..a+b-1
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


def _hypercube(spec):
    (d,) = _require_sizes(spec, 1)
    n = 1 << d
    return Graph.from_edges(n, ((v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)))


def _binary_tree(spec):
    (depth,) = _require_sizes(spec, 1)
    # heap order: children of v are 2v+1 and 2v+2
    return Graph.from_networkx(nx.balanced_tree(2, depth))


def _barbell(spec):
    (k,) = _require_sizes(spec, 1)
    edges = _cliques(2, k)
    edges.append((k - 1, k))
    return Graph.from_edges(2 * k, edges)


def _clique_ring(spec):
    r, ell = _require_sizes(spec, 2)
    if r < 2:
        raise InvalidParameterError(f"A clique ring needs r >= 2 cliques, got r={r}")
    edges = _cliques(r, ell)
    links = range(r) if r >= 3 else range(1)
    for i in links:
        nxt = (i + 1) % r
        edges.extend((i * ell + j, nxt * ell + j) for j in range(ell))
    return Graph.from_edges(r * ell, edges)


def _octopus(spec):
    r, ell = _require_sizes(spec, 2)
    center = r * ell
    edges = _cliques(r, ell)
    edges.extend((i * ell, center) for i in range(r))
    return Graph.from_edges(center + 1, edges)


def _gnp(spec):
    if len(spec.params) != 2:
        raise InvalidParameterError(f"gnp takes (n, p), got {spec.params}")
    n, p = spec.params
    if not float(n).is_integer() or int(n) < 1:
        raise InvalidParameterError(f"gnp: n must be an integer >= 1, got {n}")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"gnp: probability {p} is outside [0, 1]")
    seed = Config.DEFAULT_SEED if spec.seed is None else spec.seed
    for attempt in range(Config.GNP_RETRIES):
        graph = nx.gnp_random_graph(int(n), p, seed=seed + attempt)
        if nx.is_connected(graph):
            if attempt:
                logger.info(f"gnp({n}, {p}) connected after {attempt} retries (seed {seed + attempt})")
            return Graph.from_networkx(graph)
        logger.warning(f"gnp({n}, {p}) with seed {seed + attempt} is disconnected, retrying")
    raise SearchExhaustedError(f"No connected gnp({n}, {p}) within {Config.GNP_RETRIES} seeds starting at {seed}")


def _from_file(spec):
    from acquaintance.formats import read_graph

    if not spec.path:
        raise InvalidParameterError("file family needs a path")
    return read_graph(spec.path)


_BUILDERS: Dict[Family, Callable[[FamilySpec], Graph]] = {
    Family.PATH: _path,
    Family.CYCLE: _cycle,
    Family.COMPLETE: _complete,
    Family.COMPLETE_BIPARTITE: _complete_bipartite,
    Family.HYPERCUBE: _hypercube,
    Family.BINARY_TREE: _binary_tree,
    Family.BARBELL: _barbell,
    Family.CLIQUE_RING: _clique_ring,
    Family.OCTOPUS: _octopus,
    Family.GNP: _gnp,
    Family.FROM_FILE: _from_file,
}


def generate(spec: FamilySpec) -> Graph:
    """Build the graph named by spec with its documented vertex numbering."""
    graph = _BUILDERS[spec.family](spec)
    logger.debug(f"Generated {spec.label()}: n={graph.n}, m={graph.m}")
    return graph


def require_connected(g: Graph):
    if g.n == 1:
        return
    components = sorted((min(c) for c in nx.connected_components(g.to_networkx())))
    if len(components) > 1:
        raise DisconnectedGraphError(components[0], components[1])


def distances(g: Graph, source: int) -> Dict[int, int]:
    """Breadth-first distances from source to every reachable vertex."""
    if not 0 <= source < g.n:
        raise InvalidParameterError(f"Vertex {source} is not in the graph")
    lengths = nx.single_source_shortest_path_length(g.to_networkx(), source)
    return {v: lengths[v] for v in sorted(lengths)}


def diameter(g: Graph) -> int:
    require_connected(g)
    if g.n == 1:
        return 0
    return nx.diameter(g.to_networkx())


def bfs_tree(g: Graph, root: int) -> Tree:
    require_connected(g)
    edges = nx.bfs_edges(g.to_networkx(), root, sort_neighbors=sorted)
    return Tree.from_edges(g.n, edges, root=root)


def spanning_tree(g: Graph) -> Tree:
    """BFS tree rooted at vertex 0 with children visited in ascending order."""
    return bfs_tree(g, 0)


def tree_containing_path(g: Graph, path: Sequence[int]) -> Tree:
    require_connected(g)
    graph = g.to_networkx()
    nx.set_edge_attributes(graph, 1, "weight")
    for u, v in zip(path, path[1:]):
        graph[u][v]["weight"] = 0
    tree = nx.minimum_spanning_tree(graph, weight="weight", algorithm="kruskal")
    return Tree.from_edges(g.n, tree.edges, root=path[0])


def is_simple_path(g: Graph, path: Sequence[int]) -> bool:
    if not path or len(set(path)) != len(path):
        return False
    if any(not 0 <= v < g.n for v in path):
        return False
    return all(g.has_edge(u, v) for u, v in zip(path, path[1:]))


def is_hamiltonian_path(g: Graph, path: Sequence[int]) -> bool:
    return len(path) == g.n and is_simple_path(g, path)


def _deepest_bfs_path(g: Graph) -> List[int]:
    tree = spanning_tree(g)
    leaf = max(range(g.n), key=lambda v: (tree.depth[v], -v))
    path = [leaf]
    while tree.parent[path[-1]] != -1:
        path.append(tree.parent[path[-1]])
    return path[::-1]


def long_path(g: Graph, effort: Optional[int] = None, seed: Optional[int] = None) -> List[int]:
    """Best simple path found by randomized extension with rotations.

    Starts from the deepest root-to-leaf path of the BFS spanning tree, so the
    result is never shorter than that. Each step either extends the tail to an
    unvisited neighbor, rotates the path around a neighbor of the tail that
    already lies on it, or reverses the path to work on the other end.
    """
    require_connected(g)
    effort = Config.LONG_PATH_EFFORT if effort is None else effort
    seed = Config.DEFAULT_SEED if seed is None else seed
    best = _deepest_bfs_path(g)
    if len(best) == g.n:
        return best

    rng = np.random.default_rng(seed)
    steps = 0
    while steps < effort:
        path = [int(rng.integers(g.n))]
        on_path = {path[0]}
        stalls = 0
        while steps < effort and stalls <= g.n:
            steps += 1
            tail = path[-1]
            fresh = [w for w in g.adjacency[tail] if w not in on_path]
            if fresh:
                nxt = fresh[int(rng.integers(len(fresh)))]
                path.append(nxt)
                on_path.add(nxt)
                stalls = 0
                if len(path) > len(best):
                    best = list(path)
                    if len(best) == g.n:
                        logger.debug(f"long_path found a Hamiltonian path after {steps} steps")
                        return best
                continue
            stalls += 1
            pivots = [path.index(w) for w in g.adjacency[tail] if w in on_path and path.index(w) < len(path) - 2]
            if not pivots or rng.random() < 0.2:
                path.reverse()
                continue
            i = pivots[int(rng.integers(len(pivots)))]
            path[i + 1:] = path[i + 1:][::-1]
    logger.debug(f"long_path: best length {len(best) - 1} on n={g.n} after {steps} steps")
    return best


def _gray_code(d: int) -> List[int]:
    return [i ^ (i >> 1) for i in range(1 << d)]


def family_hamiltonian_path(spec: FamilySpec) -> Optional[List[int]]:
    """Explicit Hamiltonian path for families that have one, else None."""
    family, params = spec.family, [int(p) for p in spec.params] if spec.family != Family.GNP else []
    if family in (Family.PATH, Family.CYCLE, Family.COMPLETE):
        return list(range(params[0]))
    if family == Family.BARBELL:
        return list(range(2 * params[0]))
    if family == Family.HYPERCUBE:
        return _gray_code(params[0])
    if family == Family.BINARY_TREE and params[0] == 1:
        return [1, 0, 2]
    if family == Family.CLIQUE_RING:
        r, ell = params
        path = []
        for i in range(r):
            columns = range(ell) if i % 2 == 0 else range(ell - 1, -1, -1)
            path.extend(i * ell + j for j in columns)
        return path
    if family == Family.COMPLETE_BIPARTITE:
        a, b = params
        if a == b or a == b + 1:
            path = []
            for j in range(a):
                path.append(j)
                if j < b:
                    path.append(a + j)
            return path
        if b == a + 1:
            path = [a]
            for j in range(a):
                path.extend((j, a + j + 1))
            return path
    return None


def bipartite_sides(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Sides (A, B) if g is a complete bipartite graph; A holds vertex 0."""
    if g.n < 2:
        return None
    graph = g.to_networkx()
    if not nx.is_connected(graph) or not nx.is_bipartite(graph):
        return None
    left, right = nx.bipartite.sets(graph)
    if 0 not in left:
        left, right = right, left
    if g.m != len(left) * len(right):
        return None
    return tuple(sorted(left)), tuple(sorted(right))


def _edge_count(spec: FamilySpec) -> Optional[int]:
    p = [int(x) for x in spec.params]
    f = spec.family
    if f == Family.PATH:
        return p[0] - 1
    if f == Family.CYCLE:
        return p[0]
    if f == Family.HYPERCUBE:
        return p[0] * (1 << p[0]) // 2
    if f == Family.BINARY_TREE:
        return (1 << (p[0] + 1)) - 2
    if f == Family.BARBELL:
        return p[0] * (p[0] - 1) + 1
    if f == Family.CLIQUE_RING:
        r, ell = p
        return r * ell * (ell - 1) // 2 + (r if r >= 3 else 1) * ell
    if f == Family.OCTOPUS:
        r, ell = p
        return r * ell * (ell - 1) // 2 + r
    return None


def _candidates(n: int) -> List[FamilySpec]:
    specs = [FamilySpec(Family.PATH, (n,))]
    if n >= 3:
        specs.append(FamilySpec(Family.CYCLE, (n,)))
    if n >= 2 and n & (n - 1) == 0:
        specs.append(FamilySpec(Family.HYPERCUBE, (n.bit_length() - 1,)))
    if n >= 3 and (n + 1) & n == 0:
        specs.append(FamilySpec(Family.BINARY_TREE, ((n + 1).bit_length() - 2,)))
    if n >= 2 and n % 2 == 0:
        specs.append(FamilySpec(Family.BARBELL, (n // 2,)))
    for r in range(2, n + 1):
        if n % r == 0:
            specs.append(FamilySpec(Family.CLIQUE_RING, (r, n // r)))
    for r in range(2, n):
        if (n - 1) % r == 0:
            specs.append(FamilySpec(Family.OCTOPUS, (r, (n - 1) // r)))
    return specs


def detect_family(g: Graph) -> Optional[FamilySpec]:
    """Recognise the canonical numbering of a generated family.

    Complete bipartite graphs are recognised under any labeling; use
    bipartite_sides to recover the sides.
    """
    if g.m == g.n * (g.n - 1) // 2:
        return FamilySpec(Family.COMPLETE, (g.n,))
    for spec in _candidates(g.n):
        if _edge_count(spec) != g.m:
            continue
        if generate(spec).edges == g.edges:
            return spec
    sides = bipartite_sides(g)
    if sides is not None:
        return FamilySpec(Family.COMPLETE_BIPARTITE, (len(sides[0]), len(sides[1])))
    return None


def max_k_with_self_power(n: int) -> int:
    """Largest k with k**k <= n."""
    k = 1
    while (k + 1) ** (k + 1) <= n:
        k += 1
    return k


def log2_ceil(n: int) -> int:
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1
