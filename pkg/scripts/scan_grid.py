"""Sweep the (k, n) grid of circulant graphs C_n(1, k) against the
closed-form zero conditions.

For every cell the curvature of both edge types is computed exactly and
compared with what the closed-form conditions predict.  Cells where a
predicted zero is not zero (or vice versa) are listed at the end; the
exit status is the number of such cells.  Run from the repository root:

    python3 scripts/scan_grid.py [--k-min 2] [--k-max 8] [--n-max 40]
"""
from __future__ import annotations

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cayley_ricci.tables import scan_zm
from cayley_ricci.transport import format_rational


def fmt(value) -> str:
    return "-" if value is None else format_rational(value)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--parallelism", type=int, default=1)
    args = ap.parse_args()

    start = time.perf_counter()
    cells = scan_zm(args.k_min, args.k_max, args.n_max, parallelism=args.parallelism)
    elapsed = time.perf_counter() - start

    disagreements = []
    for cell in cells:
        cond = cell.conditions
        note = f"condition {cond.type_b_condition}" if cond.type_b_condition else ""
        flag = "ok" if cell.agrees else "DISAGREES"
        if not cell.agrees:
            disagreements.append(cell)
        print(f"k={cell.k:2d} n={cell.n:2d}  A={fmt(cell.kappa_a):>5s} B={fmt(cell.kappa_b):>5s} "
              f"AB={fmt(cell.kappa_ab):>5s}  {flag:9s} {note}")

    print(f"\n{len(cells)} cells in {elapsed:.2f}s, {len(disagreements)} disagreement(s)")
    for cell in disagreements:
        print(f"  (k={cell.k}, n={cell.n}): predicted zero but "
              f"A={fmt(cell.kappa_a)} B={fmt(cell.kappa_b)}")
    return len(disagreements)


if __name__ == "__main__":
    raise SystemExit(main())
