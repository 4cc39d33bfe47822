#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-numpy fallback.

Times the two hot loops on realistic shapes: order-2 OSD decoding of the
(128, 106) EBCH code, full-order OSD on the (8, 4) extended Hamming code,
and the 2^k Gray-code weight walk.  Prints one table row per case.
"""

import sys
import time

import numpy as np

from latkit import codes, kernels
from latkit.sim import mod_star


def time_call(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def osd_case(code, order, batch, sigma, seed):
    rng = np.random.default_rng(seed)
    gen = code.gen_bits()
    msgs = rng.integers(0, 2, (batch, code.k), dtype=np.uint8)
    x = (msgs @ gen % 2).astype(np.float64)
    ys = mod_star(x + sigma * rng.standard_normal(x.shape))
    return gen, ys


def main() -> int:
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; benchmarking pure-python only",
              file=sys.stderr)

    cases = []
    eh = codes.extended_hamming_code(3)
    gen8, ys8 = osd_case(eh, 4, 20_000, 0.35, 0)
    cases.append(("osd (8,4) order-4 x20000", "osd_decode_batch", (gen8, ys8, 4, None)))

    ebch = codes.ebch_code(128, 106)
    gen128, ys128 = osd_case(ebch, 2, 20, 0.18, 1)
    cases.append(("osd (128,106) order-2 x20", "osd_decode_batch", (gen128, ys128, 2, None)))

    eh16 = codes.extended_hamming_code(4)  # k = 11
    wide = np.hstack([eh16.gen_bits()] * 6)  # n = 96, multi-word rows
    cases.append(("weight walk 2^11, n=96", "weight_profile", (wide,)))
    id20 = np.eye(20, dtype=np.uint8)
    cases.append(("weight walk 2^20, n=20", "weight_profile", (id20,)))

    print(f"{'case':<28} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, fname, args in cases:
        results = {}
        for name in backends:
            fn = getattr(kernels.get_backend(name), fname)
            results[name] = time_call(lambda f=fn, a=args: f(*a))
        py = results["python"]
        if "cython" in results:
            cy = results["cython"]
            print(f"{label:<28} {py * 1e3:>8.1f}ms {cy * 1e3:>8.1f}ms {py / cy:>7.1f}x")
        else:
            print(f"{label:<28} {py * 1e3:>8.1f}ms {'-':>10} {'-':>8}")

    # sanity: identical outputs where both exist
    if "cython" in backends:
        a = kernels.get_backend("python").osd_decode_batch(gen8, ys8[:500], 4, None)
        b = kernels.get_backend("cython").osd_decode_batch(gen8, ys8[:500], 4, None)
        assert np.array_equal(a, b), "backend outputs diverge"
        print("backend outputs agree on the spot-check batch")
    return 0


if __name__ == "__main__":
    sys.exit(main())
