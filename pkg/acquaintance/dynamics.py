# acquaintance/dynamics.py - Rounds, simulation and strategy algebra
import logging
from typing import List, Optional, Sequence, Tuple

from models import (
    AcquaintanceState,
    Edge,
    Graph,
    InvalidMatchingError,
    InvalidParameterError,
    Matching,
    SimulationReport,
    Strategy,
    StrategyCompositionError,
    normalize_matching,
)

logger = logging.getLogger(__name__)


def validate_matching(g: Graph, m: Sequence[Edge]) -> Optional[str]:
    """First violation in m, or None when m is a matching of g."""
    used = set()
    for u, v in m:
        if not g.has_edge(u, v):
            return f"({u}, {v}) is not an edge"
        for w in (u, v):
            if w in used:
                return f"vertex {w} appears in two pairs"
            used.add(w)
    return None


def apply_round(state: AcquaintanceState, g: Graph, m: Sequence[Edge]) -> AcquaintanceState:
    violation = validate_matching(g, m)
    if violation:
        raise InvalidMatchingError(violation)
    nxt = state.copy()
    nxt.advance(g, m)
    return nxt


def simulate(g: Graph, s: Strategy) -> SimulationReport:
    if s.n != g.n:
        raise InvalidParameterError(f"Strategy is for {s.n} vertices, graph has {g.n}")
    state = AcquaintanceState.initial(g)
    counts = [state.met_count]
    for index, m in enumerate(s.rounds, start=1):
        violation = validate_matching(g, m)
        if violation:
            raise InvalidMatchingError(violation, round_index=index)
        state.advance(g, m)
        counts.append(state.met_count)
    never_met = tuple(state.never_met())
    logger.debug(f"Simulated {len(s)} rounds on n={g.n}: {len(never_met)} pairs never met")
    return SimulationReport(
        rounds=len(s),
        met_counts=tuple(counts),
        never_met=never_met,
        final_placement=tuple(int(v) for v in state.placement.position),
    )


def verify_acquaintance(g: Graph, s: Strategy) -> Tuple[bool, List[Edge]]:
    report = simulate(g, s)
    return report.is_witness, list(report.never_met)


def reverse(s: Strategy) -> Strategy:
    return Strategy(s.n, tuple(reversed(s.rounds)), dict(s.metadata))


def concat(s1: Strategy, s2: Strategy) -> Strategy:
    if s1.n != s2.n:
        raise StrategyCompositionError(f"Cannot concatenate strategies on {s1.n} and {s2.n} vertices")
    return Strategy(s1.n, s1.rounds + s2.rounds, dict(s1.metadata))


def merge_rounds(first: Sequence[Sequence[Edge]], second: Sequence[Sequence[Edge]]) -> List[Matching]:
    """Round-wise union of two round lists, the shorter one padded with empty rounds."""
    merged = []
    for index in range(max(len(first), len(second))):
        a = first[index] if index < len(first) else ()
        b = second[index] if index < len(second) else ()
        support_a = {w for pair in a for w in pair}
        clash = support_a.intersection(w for pair in b for w in pair)
        if clash:
            raise StrategyCompositionError(
                f"Round {index + 1}: supports overlap at vertices {sorted(clash)}"
            )
        merged.append(normalize_matching((*a, *b)))
    return merged


def parallel_compose(s1: Strategy, s2: Strategy) -> Strategy:
    if s1.n != s2.n:
        raise StrategyCompositionError(f"Cannot compose strategies on {s1.n} and {s2.n} vertices")
    return Strategy(s1.n, tuple(merge_rounds(s1.rounds, s2.rounds)), dict(s1.metadata))


def relabel(s: Strategy, mapping: Sequence[int], n: Optional[int] = None) -> Strategy:
    """Move every round through mapping, where mapping[old] is the new vertex."""
    n = s.n if n is None else n
    rounds = tuple(normalize_matching((mapping[u], mapping[v]) for u, v in m) for m in s.rounds)
    return Strategy(n, rounds, dict(s.metadata))
