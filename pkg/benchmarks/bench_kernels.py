"""Timing comparison between the compiled and pure-Python hot kernels.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Imports both backends directly (bypassing the import-time selection) so the
two implementations are timed on identical inputs in one process.  The
compiled extension is skipped with a note if it was not built.
"""

from __future__ import annotations

import time

import numpy as np

from subrayleigh._kernels import fallback

try:
    from subrayleigh._kernels import _core
except ImportError:
    _core = None

REPEATS = 5


def _time(fn, *args, loops: int) -> float:
    """Best-of-REPEATS wall time per call, in seconds."""
    best = float("inf")
    for _ in range(REPEATS):
        start = time.perf_counter()
        for _ in range(loops):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / loops)
    return best


def bench_fresnel_sum(impl) -> float:
    rng = np.random.default_rng(0)
    nodes = np.sort(rng.uniform(-1e-5, 1e-5, 128))
    weights = rng.uniform(0.0, 1e-7, 128)
    return _time(
        impl.fresnel_sum,
        nodes, weights, nodes, weights,
        1.2566e7, 0.1, 1.0, 1e-6, 0.0, 3e-4, 0.0,
        loops=200,
    )


def bench_permanent(impl, n: int) -> float:
    rng = np.random.default_rng(1)
    matrix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return _time(impl.permanent_ryser, matrix, loops=50)


def main() -> None:
    backends = [("python", fallback)]
    if _core is not None:
        backends.append(("compiled", _core))
    else:
        print("compiled extension not built; timing the python backend only")

    rows = []
    for name, impl in backends:
        rows.append((f"fresnel_sum 128x128 [{name}]", bench_fresnel_sum(impl)))
        for n in (8, 10, 12):
            rows.append((f"permanent_ryser {n}x{n} [{name}]", bench_permanent(impl, n)))

    width = max(len(label) for label, _ in rows)
    for label, seconds in rows:
        print(f"{label:<{width}}  {seconds * 1e6:10.1f} µs/call")

    if _core is not None:
        print()
        pairs = len(rows) // 2
        for i in range(pairs):
            label, py = rows[i]
            _, comp = rows[i + pairs]
            kernel = label.rsplit(" [", 1)[0]
            print(f"{kernel:<{width}}  speedup x{py / comp:.1f}")


if __name__ == "__main__":
    main()
