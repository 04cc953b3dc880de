"""Compare the native and pure-Python kernel backends.

Run: python benchmarks/bench_kernels.py [--sizes 100,1000,10000]
Times each kernel on synthetic workloads with both backends and prints the
speedup. Results are identical bit-for-bit (see tests/test_kernels_parity.py);
this script only measures time.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from infogen.kernels import _pure

try:
    from infogen.kernels import _native
except ImportError:
    _native = None


def _time(fn, *args, repeat=5, number=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for _ in range(number):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / number)
    return best


def bench(sizes):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        pts = np.ascontiguousarray(rng.random((n, 2)))
        other = np.ascontiguousarray(rng.random((n, 2)))
        grid_p = np.zeros((64, 64), dtype=np.uint8)
        grid_n = np.zeros((64, 64), dtype=np.uint8)
        out = np.empty((max(2, n // 2), 2))
        workloads = [
            ("hull_indices", (pts,), (pts,)),
            ("polygon_area", (pts,), (pts,)),
            ("rdp_keep", (pts, 0.01), (pts, 0.01)),
            ("distance_stats", (pts, 0.5, 0.5), (pts, 0.5, 0.5)),
            ("match_cost", (pts, other), (pts, other)),
            ("rasterize", (pts, grid_p), (pts, grid_n)),
            ("resample", (pts, out), (pts, out)),
        ]
        for name, pure_args, native_args in workloads:
            t_pure = _time(getattr(_pure, name), *pure_args)
            t_native = _time(getattr(_native, name), *native_args) if _native else None
            rows.append((name, n, t_pure, t_native))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,1000,10000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _native is None:
        print("native backend not built; timing pure backend only\n")

    rows = bench(sizes)
    print(f"{'kernel':<16} {'n':>7} {'pure (ms)':>12} {'native (ms)':>12} {'speedup':>9}")
    for name, n, t_pure, t_native in rows:
        if t_native is None:
            print(f"{name:<16} {n:>7} {t_pure * 1e3:>12.3f} {'-':>12} {'-':>9}")
        else:
            print(
                f"{name:<16} {n:>7} {t_pure * 1e3:>12.3f} {t_native * 1e3:>12.3f}"
                f" {t_pure / t_native:>8.1f}x"
            )


if __name__ == "__main__":
    main()
