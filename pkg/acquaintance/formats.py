# acquaintance/formats.py - Import/export of graphs, strategies, colorings and traces
import csv
import json
import logging
from typing import List, Optional, Tuple

from acquaintance.dynamics import validate_matching
from models import (
    FORMAT_VERSION,
    ColoredGraph,
    FormatError,
    Graph,
    InvalidParameterError,
    SimulationReport,
    Strategy,
    normalize_edge,
    normalize_matching,
)

logger = logging.getLogger(__name__)


def _data_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for row_num, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((row_num, stripped.split()))
    return lines


def _ints(row_num: int, fields: List[str], count: int) -> List[int]:
    if len(fields) != count:
        raise FormatError(f"Row {row_num}: expected {count} integers, got {len(fields)} fields")
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"Row {row_num}: fields {fields} are not integers")


def parse_graph(text: str) -> Graph:
    """Graph from the `n m` header plus one `u v` edge per line."""
    lines = _data_lines(text)
    if not lines:
        raise FormatError("Graph file is empty")
    row_num, fields = lines[0]
    n, m = _ints(row_num, fields, 2)
    if n < 1 or m < 0:
        raise FormatError(f"Row {row_num}: invalid header n={n}, m={m}")
    if len(lines) - 1 != m:
        raise FormatError(f"Header announces {m} edges, file has {len(lines) - 1}")
    edges = set()
    for row_num, fields in lines[1:]:
        u, v = _ints(row_num, fields, 2)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"Row {row_num}: ({u}, {v}) is not a pair of distinct vertices below {n}")
        edge = normalize_edge(u, v)
        if edge in edges:
            raise FormatError(f"Row {row_num}: duplicate edge {edge}")
        edges.add(edge)
    return Graph(n, frozenset(edges))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        g = parse_graph(fh.read())
    logger.debug(f"Read graph {path}: n={g.n}, m={g.m}")
    return g


def write_graph(g: Graph, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def strategy_to_dict(s: Strategy) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": s.n,
        "rounds": [[list(pair) for pair in m] for m in s.rounds],
        "metadata": s.metadata,
    }


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def strategy_from_dict(data: dict, g: Optional[Graph] = None) -> Strategy:
    """Strategy document, validated against g when given."""
    if not isinstance(data, dict) or "n" not in data or "rounds" not in data:
        raise FormatError("Strategy document needs fields 'n' and 'rounds'")
    n = data["n"]
    if not _is_int(n) or n < 1:
        raise FormatError(f"Strategy field 'n' must be a positive integer, got {n!r}")
    if g is not None and g.n != n:
        raise FormatError(f"Strategy is for {n} vertices, graph has {g.n}")
    rounds = []
    for index, raw in enumerate(data["rounds"], start=1):
        if not isinstance(raw, list) or not all(
            isinstance(pair, list) and len(pair) == 2 and all(_is_int(x) for x in pair) for pair in raw
        ):
            raise FormatError(f"Round {index}: every entry must be a pair of integers")
        pairs = [(u, v) for u, v in raw]
        if any(u == v or not (0 <= u < n and 0 <= v < n) for u, v in pairs):
            raise FormatError(f"Round {index}: pair outside 0..{n - 1} or a self-pair")
        m = normalize_matching(pairs)
        if g is not None:
            violation = validate_matching(g, m)
            if violation:
                raise FormatError(f"Round {index}: {violation}")
        rounds.append(m)
    return Strategy(n, tuple(rounds), dict(data.get("metadata") or {}))


def dumps_strategy(s: Strategy) -> str:
    return json.dumps(strategy_to_dict(s), sort_keys=True) + "\n"


def read_strategy(path: str, g: Optional[Graph] = None) -> Strategy:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return strategy_from_dict(data, g)


def write_strategy(s: Strategy, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_strategy(s))


def parse_coloring(text: str, g: Graph) -> ColoredGraph:
    """Coloring file: `n K` header, then one color per vertex."""
    lines = _data_lines(text)
    if not lines:
        raise FormatError("Coloring file is empty")
    row_num, fields = lines[0]
    n, k = _ints(row_num, fields, 2)
    if n != g.n:
        raise FormatError(f"Row {row_num}: coloring is for {n} vertices, graph has {g.n}")
    colors = [_ints(row_num, fields, 1)[0] for row_num, fields in lines[1:]]
    cg = ColoredGraph(g, k, tuple(colors))
    try:
        cg.validate()
    except InvalidParameterError as e:
        raise FormatError(f"Invalid coloring: {e}")
    return cg


def format_coloring(cg: ColoredGraph) -> str:
    return "\n".join([f"{cg.graph.n} {cg.k}", *(str(c) for c in cg.coloring)]) + "\n"


def read_coloring(path: str, g: Graph) -> ColoredGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_coloring(fh.read(), g)


def write_coloring(cg: ColoredGraph, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_coloring(cg))


def write_trace(report: SimulationReport, path: str):
    """Acquainted-pair count after every round, round 0 being the start."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round", "met_pairs"])
        for index, count in enumerate(report.met_counts):
            writer.writerow([index, count])
    logger.debug(f"Wrote {len(report.met_counts)} trace rows to {path}")
