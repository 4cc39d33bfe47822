#!/usr/bin/env python3
"""Long-run cross-check: (128, 106, 8) EBCH lattice at VNR = 2.86 dB.

The union bound predicts WER 1e-4 there; this script simulates with order-2
OSD until 100 error events (about 1e6 trials) and reports whether the
measured WER lands in [0.5, 2] x 1e-4.  Expect minutes to hours depending on
worker count and whether the compiled kernel is built.

Usage: python scripts/reproduce_ebch_longrun.py [--workers N] [--seed S]
"""

import argparse
import os
import sys
import time

from latkit import codes, kernels
from latkit.sim import SimConfig, WEREstimate, simulate_wer


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--vnr-db", type=float, default=2.86)
    parser.add_argument("--min-errors", type=int, default=100)
    parser.add_argument("--max-trials", type=int, default=5_000_000)
    args = parser.parse_args()

    code = codes.ebch_code(128, 106)
    print(f"code: {code.name}  kernel backend: {kernels.backend_name()}  "
          f"workers: {args.workers}", file=sys.stderr)
    cfg = SimConfig(vnr_db=args.vnr_db, seed=args.seed, min_errors=args.min_errors,
                    max_trials=args.max_trials, osd_order=2, workers=args.workers)
    t0 = time.perf_counter()
    est = simulate_wer(code, cfg)
    elapsed = time.perf_counter() - t0
    print(WEREstimate.CSV_HEADER)
    print(est.csv_row())
    in_band = 0.5e-4 <= est.wer <= 2.0e-4
    print(f"elapsed: {elapsed:.0f}s  wer in [0.5, 2]x1e-4: {in_band}", file=sys.stderr)
    return 0 if in_band else 1


if __name__ == "__main__":
    sys.exit(main())
