# acquaintance/bounds.py - Certified lower bounds on the acquaintance time
import logging
import math
from typing import Iterable, Optional, Tuple

import networkx as nx

from acquaintance.graph_core import bipartite_sides, detect_family, diameter, require_connected
from config import Config
from models import BoundsReport, Family, Graph, InvalidParameterError

logger = logging.getLogger(__name__)


def lower_bounds(g: Graph) -> BoundsReport:
    """Diameter and edge-counting bounds."""
    diam = diameter(g)
    pairs = g.n * (g.n - 1) // 2
    edge_bound = max(0, math.ceil(pairs / g.m) - 1) if g.m else 0
    return BoundsReport(diameter_bound=diam // 2, edge_bound=edge_bound)


def bottleneck_bound(g: Graph, separator: Iterable[int]) -> int:
    """Potential bound for a separator S.

    A pair counts once its agents have met or have shared a component of
    G - S. Per round at most |S| agents enter a component (each joining at
    most ell others) and agents on S meet at most sum(deg(s)) others.
    """
    require_connected(g)
    sep = sorted(set(separator))
    if not sep:
        raise InvalidParameterError("Separator must be nonempty")
    if len(sep) >= g.n:
        raise InvalidParameterError("Separator cannot contain every vertex")
    if any(not 0 <= s < g.n for s in sep):
        raise InvalidParameterError(f"Separator {sep} has vertices outside the graph")

    graph = g.to_networkx()
    rest = graph.subgraph(set(range(g.n)) - set(sep))
    sizes = [len(c) for c in nx.connected_components(rest)]
    ell = max(sizes)
    sep_set = set(sep)
    touching = sum(1 for u, v in g.edges if u in sep_set or v in sep_set)
    initial = sum(c * (c - 1) // 2 for c in sizes) + touching
    per_round = len(sep) * ell + sum(g.degree(s) for s in sep)
    missing = g.n * (g.n - 1) // 2 - initial
    bound = max(0, math.ceil(missing / per_round))
    logger.debug(f"bottleneck S={sep}: ell={ell}, initial={initial}, per_round={per_round} -> {bound}")
    return bound


def best_separator(g: Graph, top_k: Optional[int] = None) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Try every single vertex and the top-k degree prefixes; keep the best bound."""
    if g.n < 2:
        return None
    top_k = Config.SEPARATOR_TOP_K if top_k is None else top_k
    candidates = [(v,) for v in range(g.n)]
    by_degree = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for size in range(2, min(top_k, g.n - 1) + 1):
        candidates.append(tuple(sorted(by_degree[:size])))
    best = None
    for sep in candidates:
        value = bottleneck_bound(g, sep)
        if best is None or value > best[0]:
            best = (value, sep)
    return best


def default_separator(g: Graph) -> Optional[Tuple[int, ...]]:
    spec = detect_family(g)
    if spec is None:
        return None
    if spec.family == Family.OCTOPUS:
        return (g.n - 1,)
    if spec.family == Family.BARBELL:
        k = int(spec.params[0])
        return (k - 1, k)
    return None


def complete_bipartite_bound(g: Graph) -> Optional[int]:
    """For K_{a,b}: agents sharing a side forever never meet, so 2^t >= max(a, b)."""
    sides = bipartite_sides(g)
    if sides is None:
        return None
    largest = max(len(sides[0]), len(sides[1]))
    return math.ceil(math.log2(largest)) if largest > 1 else 0


def bounds_report(g: Graph, separator: Optional[Iterable[int]] = None) -> BoundsReport:
    base = lower_bounds(g)
    sep = tuple(sorted(set(separator))) if separator is not None else default_separator(g)
    if sep is not None:
        bottleneck = bottleneck_bound(g, sep)
    else:
        found = best_separator(g)
        bottleneck, sep = found if found else (None, None)
    family_bounds = {}
    kbip = complete_bipartite_bound(g)
    if kbip is not None:
        family_bounds["complete_bipartite"] = kbip
    report = BoundsReport(
        diameter_bound=base.diameter_bound,
        edge_bound=base.edge_bound,
        bottleneck_bound=bottleneck,
        separator=sep,
        family_bounds=family_bounds,
    )
    logger.info(f"Bounds for n={g.n}, m={g.m}: best lower bound {report.best_lower}")
    return report
