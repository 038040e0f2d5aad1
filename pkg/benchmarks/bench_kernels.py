"""Benchmark the compiled bitmask kernel against the pure-Python fallback.

Three workloads, hot-path first:
  sumset         bulk Minkowski sums of random 13-bit masks
  pair_search    all two-summand decompositions, every 0-containing subset
                 of [0, 12]
  sweep          end-to-end factorization enumeration of the same corpus
                 (pair search + memoized recursion + set assembly)

Run:  python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from powmon import PuiseuxMonoid  # noqa: E402
from powmon._kernels import compiled_available, masks_py  # noqa: E402
from powmon.decompose import _Engine  # noqa: E402

if compiled_available():
    from powmon._kernels import _masks_c
else:
    _masks_c = None


def bench_sumset(kernel, reps: int) -> float:
    rng = random.Random(1)
    pairs = [(rng.getrandbits(13) | 1, rng.getrandbits(13) | 1) for _ in range(2000)]
    t0 = time.perf_counter()
    for _ in range(reps):
        for a, b in pairs:
            kernel.sumset(a, b)
    return time.perf_counter() - t0


def bench_pair_search(kernel, reps: int) -> float:
    full = (1 << 13) - 1
    t0 = time.perf_counter()
    for _ in range(reps):
        for rest in range(1 << 12):
            b = (rest << 1) | 1
            kernel.pair_search(b, full, full)
    return time.perf_counter() - t0


def bench_sweep(kernel, reps: int) -> float:
    t0 = time.perf_counter()
    for _ in range(reps):
        engine = _Engine(PuiseuxMonoid([1]), kernel=kernel)
        engine.ensure(13)
        for rest in range(1 << 12):
            engine.factorizations((rest << 1) | 1, True)
    return time.perf_counter() - t0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", masks_py)]
    if _masks_c is not None:
        backends.append(("c", _masks_c))
    else:
        print("compiled kernel not built; timing the pure backend only")

    workloads = [
        ("sumset", bench_sumset, 10),
        ("pair_search", bench_pair_search, 1),
        ("sweep", bench_sweep, 1),
    ]

    print(f"{'workload':<14}{'backend':<10}{'best of ' + str(args.repeat):>12}")
    results: dict[tuple[str, str], float] = {}
    for wname, fn, inner in workloads:
        for bname, kernel in backends:
            best = min(fn(kernel, inner) for _ in range(args.repeat))
            results[(wname, bname)] = best
            print(f"{wname:<14}{bname:<10}{best:>11.3f}s")
        if len(backends) == 2:
            ratio = results[(wname, "python")] / results[(wname, "c")]
            print(f"{'':<14}{'speedup':<10}{ratio:>10.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
