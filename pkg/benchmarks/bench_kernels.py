#!/usr/bin/env python3
"""Benchmark the compiled Grover-iteration kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from groverdyn._kernels import available_backends, get_impl


def time_backend(name: str, n: int, r: int, steps: int, repeats: int) -> float:
    impl = get_impl(name)
    num_states = 1 << n
    rng = np.random.default_rng(7)
    base = rng.standard_normal(num_states) + 1j * rng.standard_normal(num_states)
    base /= np.linalg.norm(base)
    marked = np.sort(rng.choice(num_states, size=r, replace=False)).astype(np.intp)

    best = float("inf")
    for _ in range(repeats):
        amps = base.copy()
        start = time.perf_counter()
        impl.run_grover(amps, marked, steps)
        best = min(best, time.perf_counter() - start)
    return best / steps


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="fewer sizes and repeats")
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not available; benchmarking the fallback only")

    sizes = (8, 10, 12, 14) if args.quick else (8, 10, 12, 14, 16, 18, 20)
    repeats = 3 if args.quick else 5

    header = f"{'n':>4} {'N':>9} {'steps':>6}"
    for name in backends:
        header += f" {name + ' ms/step':>16}"
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)

    for n in sizes:
        steps = max(10, int(np.pi / 4 * np.sqrt(1 << n)))
        row = f"{n:>4} {1 << n:>9} {steps:>6}"
        times = {}
        for name in backends:
            times[name] = time_backend(name, n, r=3, steps=steps, repeats=repeats)
            row += f" {times[name] * 1e3:>16.5f}"
        if len(backends) == 2:
            row += f" {times['python'] / times['cython']:>8.2f}"
        print(row)


if __name__ == "__main__":
    main()
