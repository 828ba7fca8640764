# scaling_report.py - Measure strategy lengths across family sizes and export them to CSV
import csv
import math
import os
import sys

from acquaintance.bounds import bottleneck_bound
from acquaintance.dynamics import verify_acquaintance
from acquaintance.graph_core import generate
from acquaintance.strategies import (
    best_strategy,
    binary_tree_strategy,
    clique_ring_strategy,
    complete_bipartite_strategy,
    octopus_strategy,
    path_strategy,
)
from models import Family, FamilySpec

FIELDS = ["family", "params", "n", "rounds", "scale", "ratio", "verified"]


def _measure(rows, family, params, strategy, scale):
    g = generate(FamilySpec(family, params, seed=0))
    ok, _ = verify_acquaintance(g, strategy)
    ratio = len(strategy) / scale if scale else 0.0
    rows.append({
        "family": family.value,
        "params": " ".join(str(p) for p in params),
        "n": g.n,
        "rounds": len(strategy),
        "scale": round(scale, 3),
        "ratio": round(ratio, 3),
        "verified": ok,
    })
    mark = "✅" if ok else "❌"
    print(f"  {mark} {family.value}{params}: {len(strategy)} rounds, ratio {ratio:.3f}")
    return ok


def run_scaling_report(output="scaling_report.csv", quick=False):
    """Measure envelope constants for the family strategies; returns True when every strategy verified"""

    print("📈 Acquaintance Scaling Report")
    print("=" * 50)

    sizes = (8, 16, 32, 64) if quick else (16, 32, 64, 128, 256)
    depths = (2, 3, 4) if quick else (5, 6, 7, 8, 9)
    rows = []
    failures = 0

    try:
        print("\n🛤️  Paths (rounds / n)")
        for n in sizes:
            failures += not _measure(rows, Family.PATH, (n,), path_strategy(n), n)

        print("\n🌳 Binary trees (rounds / n log2 n)")
        for depth in depths:
            n = (1 << (depth + 1)) - 1
            failures += not _measure(rows, Family.BINARY_TREE, (depth,), binary_tree_strategy(depth), n * math.log2(n))

        print("\n💍 Clique rings (rounds / r)")
        for r in (4, 8, 16) if quick else (4, 8, 16, 32):
            failures += not _measure(rows, Family.CLIQUE_RING, (r, 3), clique_ring_strategy(r, 3), r)

        print("\n🔀 K_(n,n) (rounds / log2 n)")
        for r in (1, 2, 3) if quick else (1, 2, 3, 4, 5):
            failures += not _measure(rows, Family.COMPLETE_BIPARTITE, (1 << r, 1 << r), complete_bipartite_strategy(r), r)

        print("\n🐙 Octopus (min over modes / min(nr, nl))")
        for r, ell in ((2, 8), (8, 2), (4, 4)):
            n = r * ell + 1
            best = min((octopus_strategy(r, ell, mode) for mode in ("pairs", "center")), key=len)
            failures += not _measure(rows, Family.OCTOPUS, (r, ell), best, min(n * r, n * ell))
        for ell in (4, 8, 16):
            g = generate(FamilySpec(Family.OCTOPUS, (4, ell)))
            print(f"  • bottleneck bound on octopus(4, {ell}): {bottleneck_bound(g, [g.n - 1])}")

        print("\n🎲 G(n, p) typical length (rounds / n)")
        for n in (12, 24) if quick else (12, 24, 48):
            spec = FamilySpec(Family.GNP, (n, 0.3), seed=0)
            failures += not _measure(rows, Family.GNP, (n, 0.3), best_strategy(generate(spec), seed=0), n)

        with open(output, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=FIELDS)
            writer.writeheader()
            writer.writerows(rows)

        print("\n🎉 Report completed!")
        print("=" * 50)
        print("📊 Summary:")
        print(f"  • Measurements: {len(rows)}")
        print(f"  • Verification failures: {failures}")
        print(f"  • CSV saved as: {os.path.abspath(output)}")
        return failures == 0

    except Exception as e:
        print(f"\n❌ Report failed: {str(e)}")
        return False

    finally:
        print("")


if __name__ == "__main__":
    quick = "--quick" in sys.argv
    success = run_scaling_report(quick=quick)
    if not success:
        print("❌ Some strategies did not verify. Check the output above.")
        sys.exit(1)
