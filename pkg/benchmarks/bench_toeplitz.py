#!/usr/bin/env python3
"""Benchmark the GF(2) Toeplitz kernels: compiled core vs NumPy fallback.

Runs the production extraction geometry (2048 -> 1800 bits per block)
over a stream of blocks and reports throughput for whichever backends
are importable, plus a bit-exactness cross-check.

    python3 benchmarks/bench_toeplitz.py [n_blocks]
"""
import sys
import time

import numpy as np

from lpnqrng import _gf2_fallback
from lpnqrng.extractor import ToeplitzSpec, pack_bits_to_words
from lpnqrng.rng import bit_stream

try:
    from lpnqrng import _gf2
except ImportError:
    _gf2 = None

N_IN, N_OUT = 2048, 1800


def bench(kernel, rows, blocks, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernel(rows, blocks)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    n_blocks = int(sys.argv[1]) if len(sys.argv) > 1 else 512
    spec = ToeplitzSpec(N_IN, N_OUT, bit_stream(0xB0B, N_IN + N_OUT - 1))
    rows = pack_bits_to_words(spec.matrix())
    blocks = pack_bits_to_words(
        bit_stream(0xCAFE, n_blocks * N_IN).reshape(n_blocks, N_IN))
    out_bits = n_blocks * N_OUT

    print(f"geometry {N_IN}x{N_OUT}, {n_blocks} blocks, "
          f"{out_bits / 1e6:.2f} Mbit out")

    t_np, out_np = bench(_gf2_fallback.toeplitz_apply_packed, rows, blocks)
    print(f"numpy fallback : {t_np * 1e3:8.1f} ms  "
          f"{out_bits / t_np / 1e6:8.1f} Mbit/s")

    if _gf2 is None:
        print("compiled core  : not built (run: python3 setup.py build_ext --inplace)")
        return 0

    t_c, out_c = bench(_gf2.toeplitz_apply_packed, rows, blocks)
    print(f"compiled core  : {t_c * 1e3:8.1f} ms  "
          f"{out_bits / t_c / 1e6:8.1f} Mbit/s")
    print(f"speedup        : {t_np / t_c:8.1f}x")
    match = np.array_equal(out_np, out_c)
    print(f"bit-exact match: {match}")
    return 0 if match else 1


if __name__ == "__main__":
    sys.exit(main())
