#!/usr/bin/env python3
"""Verify the quadratic worst case of the draw loop empirically.

On an all-isolated dataset every draw fails the cardinality test, so the
loop draws each line once and scans the whole dataset each time: exactly
n^2 relation evaluations, O(n) auxiliary memory.

Run:  python demos/05_complexity_check.py
"""

import time

from lineclust import NeighbourhoodSpec, RunConfig, run_literal
from lineclust.data_io import gen_isolated


def main():
    spec = NeighbourhoodSpec(version=1, c=2, alpha=1.0)
    print(f"{'n':>6} {'evals':>10} {'n^2':>10} {'aux':>6} {'seconds':>9} {'ratio':>7}")
    prev = None
    for n in (100, 200, 400, 800):
        U = [r.to_segment() for r in gen_isolated(n)]
        start = time.perf_counter()
        labels = run_literal(U, RunConfig(spec=spec, mode="literal", rng_seed=0))
        elapsed = time.perf_counter() - start
        ratio = f"{elapsed / prev:7.2f}" if prev else "      -"
        print(f"{n:>6} {labels.eval_count:>10} {n * n:>10} {labels.peak_aux:>6} "
              f"{elapsed:>9.3f} {ratio}")
        prev = elapsed
    print("\ndoubling n quadruples the work; auxiliary occupancy stays ~n")


if __name__ == "__main__":
    main()
