#!/usr/bin/env python3
"""Wall time of the no-skip basis construction as widths and depth double."""
from __future__ import annotations

import argparse
import gc
import statistics
import time

from bpk.network import make_network
from bpk.subroutine import subroutine_basis


def median_time(L: int, W: int, reps: int) -> float:
    spec = make_network([W] * (L + 1))
    out = []
    gc.collect()
    gc.disable()
    try:
        for _ in range(reps):
            t0 = time.perf_counter()
            subroutine_basis(spec)
            out.append(time.perf_counter() - t0)
    finally:
        gc.enable()
    return statistics.median(out)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=int, nargs="+", default=[4, 8, 16])
    ap.add_argument("--W", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--reps", type=int, default=5)
    a = ap.parse_args()
    print("L\tW\t|B|\tseconds\tratio_vs_half_W")
    for L in a.L:
        prev = None
        for W in a.W:
            t = median_time(L, W, a.reps)
            n = len(subroutine_basis(make_network([W] * (L + 1))))
            print(f"{L}\t{W}\t{n}\t{t:.4f}\t{t / prev:.2f}" if prev else f"{L}\t{W}\t{n}\t{t:.4f}\t-")
            prev = t


if __name__ == "__main__":
    main()
