"""Recompute every golden curvature table and report mismatches.

Runs each of the ten tables through the sweep engine and compares the
results cell by cell against the shipped values.  Exits nonzero if any
cell disagrees.  Run from the repository root:

    python3 scripts/reproduce_tables.py [--parallelism N]
"""
from __future__ import annotations

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cayley_ricci.tables import TABLE_IDS, reproduce_table
from cayley_ricci.transport import format_rational


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--parallelism", type=int, default=1)
    args = ap.parse_args()

    failed = 0
    for tid in TABLE_IDS:
        start = time.perf_counter()
        report = reproduce_table(tid, parallelism=args.parallelism)
        elapsed = time.perf_counter() - start
        mark = "ok" if report.ok else f"{len(report.mismatches)} MISMATCHES"
        print(f"table {tid:2d}: {len(report.cells):3d} cells  {elapsed:6.2f}s  {mark}")
        for cell in report.mismatches:
            failed += 1
            computed = "non-uniform" if cell.computed is None else format_rational(cell.computed)
            print(f"  {cell.group} {cell.gens} type {cell.edge_kind}: "
                  f"expected {format_rational(cell.expected)}, computed {computed}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
