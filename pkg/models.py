# models.py - Domain types and errors shared by the acquaintance modules
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

Edge = Tuple[int, int]
Matching = Tuple[Edge, ...]

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class AcquaintanceError(ValueError):
    """Base class for every domain error raised by the toolkit."""


class InvalidParameterError(AcquaintanceError):
    pass


class DisconnectedGraphError(AcquaintanceError):
    def __init__(self, u, v):
        self.u = u
        self.v = v
        super().__init__(f"Graph is disconnected: no path between vertex {u} and vertex {v}")


class InvalidMatchingError(AcquaintanceError):
    def __init__(self, message, round_index=None):
        self.round_index = round_index
        if round_index is not None:
            message = f"Round {round_index}: {message}"
        super().__init__(message)


class StrategyCompositionError(AcquaintanceError):
    pass


class SizeCapExceededError(AcquaintanceError):
    pass


class AcquaintanceCertificate(AcquaintanceError):
    """A sound proof that the graph needs at least two rounds."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"AC >= 2 certified: {reason}")


class SearchExhaustedError(AcquaintanceError):
    pass


class FormatError(AcquaintanceError):
    pass


def normalize_edge(u, v) -> Edge:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


def normalize_matching(pairs: Iterable[Sequence[int]]) -> Matching:
    return tuple(sorted(normalize_edge(u, v) for u, v in pairs))


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"Graph needs at least one vertex, got n={self.n}")
        neighbors: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise InvalidParameterError(f"Self-loop at vertex {u}")
            if not 0 <= u < v < self.n:
                raise InvalidParameterError(f"Edge ({u}, {v}) is not a normalized pair of vertices below {self.n}")
            neighbors[u].append(v)
            neighbors[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(adj)) for adj in neighbors))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        normalized = set()
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"Self-loop at vertex {u}")
            normalized.add(normalize_edge(u, v))
        return cls(n, frozenset(normalized))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        nodes = sorted(graph.nodes)
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def edge_array(self) -> np.ndarray:
        if not self.edges:
            return np.zeros((0, 2), dtype=np.intp)
        return np.array(self.sorted_edges, dtype=np.intp)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max(len(adj) for adj in self.adjacency)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_edges)
        return graph


@dataclass(frozen=True)
class Tree:
    graph: Graph
    root: int
    parent: Tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        if g.m != g.n - 1:
            raise InvalidParameterError(f"A tree on {g.n} vertices has {g.n - 1} edges, got {g.m}")
        if len(self.parent) != g.n or self.parent[self.root] != -1:
            raise InvalidParameterError("Parent map must cover every vertex and mark the root with -1")
        parent_edges = {normalize_edge(v, p) for v, p in enumerate(self.parent) if v != self.root}
        if parent_edges != set(g.edges) or not nx.is_tree(g.to_networkx()):
            raise InvalidParameterError("Parent map is inconsistent with the tree edges")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], root: int = 0) -> "Tree":
        graph = Graph.from_edges(n, edges)
        if graph.m != n - 1:
            raise InvalidParameterError(f"A tree on {n} vertices has {n - 1} edges, got {graph.m}")
        parent = [-1] * n
        for child, pred in nx.bfs_predecessors(graph.to_networkx(), root, sort_neighbors=sorted):
            parent[child] = pred
        return cls(graph, root, tuple(parent))

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        kids: List[List[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(sorted(k)) for k in kids)

    @cached_property
    def depth(self) -> Tuple[int, ...]:
        lengths = nx.single_source_shortest_path_length(self.graph.to_networkx(), self.root)
        return tuple(lengths[v] for v in range(self.n))

    def distances_from(self, v: int) -> Dict[int, int]:
        return dict(nx.single_source_shortest_path_length(self.graph.to_networkx(), v))


class Family(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "kbip"
    HYPERCUBE = "hypercube"
    BINARY_TREE = "bintree"
    BARBELL = "barbell"
    CLIQUE_RING = "ring"
    OCTOPUS = "octopus"
    GNP = "gnp"
    FROM_FILE = "file"


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: Tuple[Any, ...] = ()
    seed: Optional[int] = None
    path: Optional[str] = None

    def label(self) -> str:
        args = ", ".join(str(p) for p in self.params)
        return f"{self.family.value}({args})"


# ---------------------------------------------------------------------------
# Process state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Strategy:
    """Ordered sequence of matchings for an n-vertex graph."""

    n: int
    rounds: Tuple[Matching, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def from_rounds(cls, n: int, rounds: Iterable[Iterable[Sequence[int]]], drop_empty: bool = False, **metadata) -> "Strategy":
        normalized = [normalize_matching(m) for m in rounds]
        if drop_empty:
            normalized = [m for m in normalized if m]
        return cls(n, tuple(normalized), dict(metadata))

    def __len__(self) -> int:
        return len(self.rounds)

    @property
    def generator(self) -> Optional[str]:
        return self.metadata.get("generator")


class Placement:
    """Bijection between agents and vertices. Agent i starts at vertex i."""

    def __init__(self, agent_at: np.ndarray, position: np.ndarray):
        self.agent_at = agent_at
        self.position = position

    @classmethod
    def identity(cls, n: int) -> "Placement":
        return cls(np.arange(n, dtype=np.intp), np.arange(n, dtype=np.intp))

    def copy(self) -> "Placement":
        return Placement(self.agent_at.copy(), self.position.copy())

    def apply(self, matching: Sequence[Edge]):
        if not matching:
            return
        us = np.fromiter((u for u, _ in matching), dtype=np.intp, count=len(matching))
        vs = np.fromiter((v for _, v in matching), dtype=np.intp, count=len(matching))
        at_u = self.agent_at[us]
        at_v = self.agent_at[vs]
        self.agent_at[us] = at_v
        self.agent_at[vs] = at_u
        self.position[at_v] = us
        self.position[at_u] = vs

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.agent_at, np.arange(len(self.agent_at))))


class AcquaintanceState:
    """Agent placement plus the symmetric met relation, advanced in place."""

    def __init__(self, placement: Placement, met: np.ndarray, round_index: int = 0, met_count: int = 0):
        self.placement = placement
        self.met = met
        self.round = round_index
        self.met_count = met_count

    @classmethod
    def initial(cls, g: Graph) -> "AcquaintanceState":
        state = cls(Placement.identity(g.n), np.zeros((g.n, g.n), dtype=bool))
        state._sweep(g)
        return state

    def copy(self) -> "AcquaintanceState":
        return AcquaintanceState(self.placement.copy(), self.met.copy(), self.round, self.met_count)

    @property
    def n(self) -> int:
        return len(self.placement.agent_at)

    @property
    def total_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def all_met(self) -> bool:
        return self.met_count == self.total_pairs

    def _sweep(self, g: Graph):
        edges = g.edge_array
        if not len(edges):
            return
        a = self.placement.agent_at[edges[:, 0]]
        b = self.placement.agent_at[edges[:, 1]]
        fresh = ~self.met[a, b]
        self.met_count += int(np.count_nonzero(fresh))
        self.met[a, b] = True
        self.met[b, a] = True

    def advance(self, g: Graph, matching: Sequence[Edge]):
        """Swap along the matching, then record every pair sharing an edge."""
        self.placement.apply(matching)
        self._sweep(g)
        self.round += 1

    def position(self, agent: int) -> int:
        return int(self.placement.position[agent])

    def agent_done(self, agent: int) -> bool:
        return int(np.count_nonzero(self.met[agent])) == self.n - 1

    def group_met(self, agents: Sequence[int]) -> bool:
        if len(agents) < 2:
            return True
        idx = np.asarray(agents, dtype=np.intp)
        block = self.met[np.ix_(idx, idx)]
        return int(np.count_nonzero(block)) == len(agents) * (len(agents) - 1)

    def never_met(self) -> List[Edge]:
        rows, cols = np.triu_indices(self.n, k=1)
        missing = ~self.met[rows, cols]
        return [(int(a), int(b)) for a, b in zip(rows[missing], cols[missing])]


@dataclass(frozen=True)
class SimulationReport:
    rounds: int
    met_counts: Tuple[int, ...]
    never_met: Tuple[Edge, ...]
    final_placement: Tuple[int, ...]

    @property
    def is_witness(self) -> bool:
        return not self.never_met


@dataclass(frozen=True)
class BoundsReport:
    diameter_bound: int
    edge_bound: int
    bottleneck_bound: Optional[int] = None
    separator: Optional[Tuple[int, ...]] = None
    family_bounds: Dict[str, int] = field(default_factory=dict, compare=False, hash=False)

    @property
    def best_lower(self) -> int:
        values = [self.diameter_bound, self.edge_bound, *self.family_bounds.values()]
        if self.bottleneck_bound is not None:
            values.append(self.bottleneck_bound)
        return max(values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format_version": FORMAT_VERSION,
            "diameter_bound": self.diameter_bound,
            "edge_bound": self.edge_bound,
            "bottleneck_bound": self.bottleneck_bound,
            "separator": list(self.separator) if self.separator is not None else None,
            "family_bounds": dict(sorted(self.family_bounds.items())),
            "best_lower": self.best_lower,
        }


@dataclass(frozen=True)
class RoutingTask:
    tree: Tree
    sources: Tuple[int, ...]
    targets: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.sources)) != len(self.sources) or len(set(self.targets)) != len(self.targets):
            raise InvalidParameterError("Routing sources and targets must be sets")
        if len(self.sources) != len(self.targets):
            raise InvalidParameterError(
                f"Routing needs |S| = |T|, got |S|={len(self.sources)} and |T|={len(self.targets)}"
            )
        for v in (*self.sources, *self.targets):
            if not 0 <= v < self.tree.n:
                raise InvalidParameterError(f"Vertex {v} is not in the tree")

    @property
    def k(self) -> int:
        return len(self.sources)

    @cached_property
    def ell(self) -> int:
        if not self.sources:
            return 0
        return max(max(self.tree.distances_from(s)[t] for t in self.targets) for s in self.sources)


@dataclass(frozen=True)
class ExactResult:
    value: Optional[int]
    witness: Optional[Strategy]
    exceeded: bool = False


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    k: int
    coloring: Tuple[int, ...]

    def classes(self) -> List[List[int]]:
        buckets: List[List[int]] = [[] for _ in range(self.k)]
        for v, color in enumerate(self.coloring):
            buckets[color].append(v)
        return buckets

    def validate(self):
        n = self.graph.n
        if self.k < 1 or n % self.k:
            raise InvalidParameterError(f"Color count {self.k} must divide n={n}")
        if len(self.coloring) != n:
            raise InvalidParameterError(f"Coloring covers {len(self.coloring)} vertices, graph has {n}")
        for v, color in enumerate(self.coloring):
            if not 0 <= color < self.k:
                raise InvalidParameterError(f"Vertex {v} has color {color} outside 0..{self.k - 1}")
        for u, v in self.graph.sorted_edges:
            if self.coloring[u] == self.coloring[v]:
                raise InvalidParameterError(f"Edge ({u}, {v}) is monochromatic")
        sizes = {len(c) for c in self.classes()}
        if sizes != {n // self.k}:
            raise InvalidParameterError(f"Coloring is not equitable: class sizes {sorted(sizes)}")


@dataclass(frozen=True)
class AcOnePartition:
    pairs: Tuple[Edge, ...]
    rest: FrozenSet[int] = frozenset()

    @property
    def k(self) -> int:
        return len(self.pairs)

    def check_covers(self, n: int):
        seen = [v for pair in self.pairs for v in pair] + sorted(self.rest)
        if len(seen) != len(set(seen)) or set(seen) != set(range(n)):
            raise InvalidParameterError("Pairs and rest must partition the vertex set")


@dataclass(frozen=True)
class StructureAudit:
    n: int
    edge_count: int
    edge_count_ok: bool
    high_degree_count: int
    high_degree_ok: bool
    matching_size: int
    perfect_matching_ok: bool
    neighborhood_ok: bool
    neighborhood_violation: Optional[Edge] = None
    degree_sum_ok: Optional[bool] = None
    c_degree_ok: Optional[bool] = None
    pair_edges_ok: Optional[bool] = None

    def certificate_failures(self) -> List[str]:
        failures = []
        if not self.edge_count_ok:
            failures.append(f"edge count {self.edge_count} is below (n^2-1)/4")
        if not self.high_degree_ok:
            failures.append(f"only {self.high_degree_count} vertices have degree >= ceil(n/2)")
        if not self.perfect_matching_ok:
            failures.append(f"maximum matching has {self.matching_size} edges, fewer than floor(n/2)")
        if not self.neighborhood_ok:
            u, v = self.neighborhood_violation
            failures.append(f"high-degree vertices {u} and {v} have sparse, disjoint neighborhoods")
        return failures

    def partition_failures(self) -> List[str]:
        checks = {
            "degree sum of a pair is below n": self.degree_sum_ok,
            "a rest vertex has too small a degree": self.c_degree_ok,
            "too few edges between the two sides of the pairs": self.pair_edges_ok,
        }
        return [label for label, ok in checks.items() if ok is False]

    @property
    def certifies(self) -> bool:
        return bool(self.certificate_failures())

    @property
    def passed(self) -> bool:
        return not self.certificate_failures() and not self.partition_failures()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format_version": FORMAT_VERSION,
            "n": self.n,
            "edge_count": self.edge_count,
            "edge_count_ok": self.edge_count_ok,
            "high_degree_count": self.high_degree_count,
            "high_degree_ok": self.high_degree_ok,
            "matching_size": self.matching_size,
            "perfect_matching_ok": self.perfect_matching_ok,
            "neighborhood_ok": self.neighborhood_ok,
            "neighborhood_violation": list(self.neighborhood_violation) if self.neighborhood_violation else None,
            "degree_sum_ok": self.degree_sum_ok,
            "c_degree_ok": self.c_degree_ok,
            "pair_edges_ok": self.pair_edges_ok,
            "passed": self.passed,
        }
