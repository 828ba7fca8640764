# app.py - Command line for the acquaintance toolkit
import argparse
import json
import logging
import sys

from acquaintance import ac_one, bounds, dynamics, exact, formats, graph_core, hardness, strategies
from config import Config
from models import (
    AcOnePartition,
    AcquaintanceCertificate,
    AcquaintanceError,
    FORMAT_VERSION,
    Family,
    FamilySpec,
    InvalidParameterError,
    Strategy,
)

logger = logging.getLogger("acquaint")

METHODS = ("auto", "path", "ham", "tree", "kbip", "ring", "octopus", "longpath", "maxdeg", "general", "baseline")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _number(text):
    try:
        return int(text)
    except ValueError:
        return float(text)


def _vertices(text):
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise InvalidParameterError(f"Expected comma-separated vertices, got {text!r}")


def _pairs(text):
    pairs = []
    for item in text.split(","):
        try:
            a, b = item.split("-")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise InvalidParameterError(f"Expected pairs like 0-1,2-3, got {text!r}")
    return tuple(pairs)


def _report(args, data, text):
    if args.json:
        print(json.dumps({"format_version": FORMAT_VERSION, **data}, sort_keys=True))
    else:
        print(text)


def _emit_strategy(s: Strategy, output):
    if output:
        formats.write_strategy(s, output)
    else:
        sys.stdout.write(formats.dumps_strategy(s))


def _detected(g, family: Family) -> FamilySpec:
    spec = graph_core.detect_family(g)
    if spec is None or spec.family != family:
        raise InvalidParameterError(f"Graph is not a canonically numbered {family.value} graph")
    return spec


def cmd_gen(args) -> int:
    if args.family == "planted":
        if len(args.params) != 3:
            raise InvalidParameterError("planted takes n K p")
        n, k, p = args.params
        cg = hardness.plant_equicolorable(int(n), int(k), float(p), seed=args.seed)
        g = cg.graph
        if args.coloring:
            formats.write_coloring(cg, args.coloring)
    else:
        try:
            family = Family(args.family)
        except ValueError:
            raise InvalidParameterError(f"Unsupported family: {args.family}")
        params = tuple(_number(p) for p in args.params)
        g = graph_core.generate(FamilySpec(family, params, seed=args.seed, path=args.input))
    if args.output:
        formats.write_graph(g, args.output)
        logger.info(f"Wrote graph with n={g.n}, m={g.m} to {args.output}")
    else:
        sys.stdout.write(formats.format_graph(g))
    return 0


def cmd_bounds(args) -> int:
    g = formats.read_graph(args.graph)
    separator = _vertices(args.separator) if args.separator else None
    report = bounds.bounds_report(g, separator)
    lines = [
        f"diameter bound:   {report.diameter_bound}",
        f"edge bound:       {report.edge_bound}",
        f"bottleneck bound: {report.bottleneck_bound} (separator {list(report.separator or [])})",
    ]
    lines.extend(f"{name} bound: {value}" for name, value in sorted(report.family_bounds.items()))
    lines.append(f"best lower bound: {report.best_lower}")
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


def _build_strategy(args, g) -> Strategy:
    method = args.method
    if method == "auto":
        return strategies.best_strategy(g, seed=args.seed)
    if method == "path":
        _detected(g, Family.PATH)
        return strategies.path_strategy(g.n)
    if method == "ham":
        path = _vertices(args.path)
        if not path:
            spec = graph_core.detect_family(g)
            path = graph_core.family_hamiltonian_path(spec) if spec else None
        if not path or not graph_core.is_hamiltonian_path(g, path):
            path = graph_core.long_path(g, seed=args.seed)
        return strategies.hamiltonian_strategy(g, path)
    if method == "tree":
        spec = _detected(g, Family.BINARY_TREE)
        return strategies.binary_tree_strategy(int(spec.params[0]))
    if method == "kbip":
        sides = graph_core.bipartite_sides(g)
        if sides is None or len(sides[0]) != len(sides[1]) or len(sides[0]) & (len(sides[0]) - 1):
            raise InvalidParameterError("kbip needs K_(n,n) with n a power of two")
        r = len(sides[0]).bit_length() - 1
        return dynamics.relabel(strategies.complete_bipartite_strategy(r), list(sides[0]) + list(sides[1]))
    if method == "ring":
        spec = _detected(g, Family.CLIQUE_RING)
        return strategies.clique_ring_strategy(*(int(p) for p in spec.params))
    if method == "octopus":
        spec = _detected(g, Family.OCTOPUS)
        return strategies.octopus_strategy(*(int(p) for p in spec.params), mode=args.mode)
    if method == "longpath":
        path = _vertices(args.path) or graph_core.long_path(g, seed=args.seed)
        return strategies.long_path_strategy(g, path)
    if method == "maxdeg":
        return strategies.max_degree_strategy(g)
    if method == "general":
        return strategies.ac_upper_general(g, seed=args.seed)
    return strategies.dfs_baseline(g)


def cmd_strat(args) -> int:
    g = formats.read_graph(args.graph)
    s = _build_strategy(args, g)
    ok, missing = dynamics.verify_acquaintance(g, s)
    if not ok:
        logger.error(f"{args.method} strategy leaves {len(missing)} pairs unmet, not writing it")
        return 1
    _emit_strategy(s, args.output)
    if args.output:
        _report(args, {"rounds": len(s), "generator": s.generator}, f"{len(s)} rounds ({s.generator})")
    return 0


def cmd_verify(args) -> int:
    g = formats.read_graph(args.graph)
    s = formats.read_strategy(args.strategy, g)
    report = dynamics.simulate(g, s)
    if args.trace:
        formats.write_trace(report, args.trace)
    data = {
        "witness": report.is_witness,
        "rounds": report.rounds,
        "never_met": [list(p) for p in report.never_met],
    }
    if report.is_witness:
        text = f"witness: {report.rounds} rounds"
    else:
        text = f"not a witness: {len(report.never_met)} pairs never met, e.g. {list(report.never_met[0])}"
    _report(args, data, text)
    return 0 if report.is_witness else 1


def cmd_exact(args) -> int:
    g = formats.read_graph(args.graph)
    result = exact.exact_ac(g, max_rounds=args.max_rounds, max_vertices=args.max_vertices)
    if result.exceeded:
        _report(args, {"value": None, "exceeded": True}, f"exceeded: AC > {args.max_rounds}")
        return 1
    if args.output:
        formats.write_strategy(result.witness, args.output)
    _report(args, {"value": result.value, "exceeded": False}, str(result.value))
    return 0


def _print_audit(args, audit) -> int:
    failures = audit.certificate_failures() + audit.partition_failures()
    text = "audit passed" if audit.passed else "audit failed:\n  " + "\n  ".join(failures)
    if args.json:
        print(json.dumps(audit.to_dict(), sort_keys=True))
    else:
        print(text)
    return 0 if audit.passed else 1


def cmd_ac1(args) -> int:
    g = formats.read_graph(args.graph)
    if args.mode == "audit":
        audit = ac_one.structure_audit(g)
        if audit.certifies:
            _print_audit(args, audit)
            return 3
        return _print_audit(args, audit)
    if args.mode == "det":
        s = ac_one.deterministic_strategy(g, c=args.c)
    else:
        s = ac_one.randomized_strategy(g, seed=args.seed)
    _emit_strategy(s, args.output)
    if args.output:
        _report(args, {"rounds": len(s), "generator": s.generator}, f"{len(s)} rounds ({s.generator})")
    return 0


def cmd_reduce(args) -> int:
    g = formats.read_graph(args.graph)
    cg = formats.read_coloring(args.coloring, g)
    h, witness = hardness.reduce(cg, args.t)
    formats.write_graph(h, args.output)
    if args.witness:
        formats.write_strategy(witness, args.witness)
    _report(args, {"n": h.n, "m": h.m, "rounds": len(witness)}, f"H: n={h.n}, m={h.m}, witness {len(witness)} rounds")
    return 0


def cmd_double(args) -> int:
    h = formats.read_graph(args.graph)
    g, rungs = hardness.ramsey_double(h, rule=args.rule, seed=args.seed)
    formats.write_graph(g, args.output)
    if args.witness:
        formats.write_strategy(Strategy(g.n, (rungs,), {"generator": "ramsey_double", "params": {"rule": args.rule}}), args.witness)
    _report(args, {"n": g.n, "m": g.m}, f"G: n={g.n}, m={g.m}")
    return 0


def cmd_audit(args) -> int:
    g = formats.read_graph(args.graph)
    partition = None
    if args.pairs:
        pairs = _pairs(args.pairs)
        covered = {v for pair in pairs for v in pair}
        partition = AcOnePartition(pairs, frozenset(set(range(g.n)) - covered))
    return _print_audit(args, ac_one.structure_audit(g, partition))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acquaint", description="Acquaintance time of graphs")
    parser.add_argument("--json", action="store_true", help="machine-readable reports")
    parser.add_argument("--log-level", default=Config.LOG_LEVEL, type=str.upper, choices=LOG_LEVELS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph family")
    p.add_argument("--family", required=True, help="family name, or 'planted'")
    p.add_argument("--params", nargs="*", default=[])
    p.add_argument("--seed", type=int, default=Config.DEFAULT_SEED)
    p.add_argument("--input", help="source file for the 'file' family")
    p.add_argument("--coloring", help="coloring output for 'planted'")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bounds", help="lower bounds")
    p.add_argument("graph")
    p.add_argument("--separator")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("strat", help="build a strategy")
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--mode", choices=("pairs", "center"), default="pairs")
    p.add_argument("--path", help="comma-separated path for ham/longpath")
    p.add_argument("--seed", type=int, default=Config.DEFAULT_SEED)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_strat)

    p = sub.add_parser("verify", help="check a strategy")
    p.add_argument("graph")
    p.add_argument("strategy")
    p.add_argument("--trace", help="CSV of met pairs per round")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("exact", help="exact acquaintance time")
    p.add_argument("graph")
    p.add_argument("--max-rounds", type=int, default=Config.EXACT_MAX_ROUNDS)
    p.add_argument("--max-vertices", type=int, default=Config.EXACT_MAX_VERTICES)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("ac1", help="graphs with acquaintance time one")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("audit", "det", "rand"), default="audit")
    p.add_argument("--seed", type=int, default=Config.DEFAULT_SEED)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_ac1)

    p = sub.add_parser("reduce", help="instance with a t-round witness from an equitable coloring")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--witness")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("double", help="doubling construction with a 1-round witness")
    p.add_argument("graph")
    p.add_argument("--rule", choices=("deterministic", "seeded"), default="deterministic")
    p.add_argument("--seed", type=int, default=Config.DEFAULT_SEED)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--witness")
    p.set_defaults(handler=cmd_double)

    p = sub.add_parser("audit", help="structural screen for acquaintance time one")
    p.add_argument("graph")
    p.add_argument("--pairs", help="partition pairs like 0-1,2-3; the rest is C")
    p.set_defaults(handler=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.handler(args)
    except AcquaintanceCertificate as e:
        logger.error(str(e))
        return 3
    except (AcquaintanceError, OSError, json.JSONDecodeError) as e:
        logger.error(str(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
