"""Benchmark the segment-stepping kernel: numba backend vs numpy fallback.

Builds one demo-sized scenario, assembles the same segment inputs the engine
uses, then times repeated kernel calls per backend and cross-checks agreement.
Also reports end-to-end run_game timings for context.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from l2pursuit import GameParams, TimeGrid, build_strategy, guaranteed_time, run_game, zero_evader
from l2pursuit.engine import _merged_bounds
from l2pursuit.kernels import available_backends, simulate_segments


def build_scenario(n: int, steps: int):
    i = np.arange(1, n + 1, dtype=np.float64)
    p = GameParams(lambdas=i, z0=1.0 / i, rho=2.0, sigma=1.0)
    grid = TimeGrid(horizon=1.05 * guaranteed_time(p).guaranteed, steps=steps)
    return p, grid


def kernel_inputs(p: GameParams, grid: TimeGrid):
    s = build_strategy(p)
    bounds, base_seg = _merged_bounds(grid, s.switch_times)
    w_active = -s.direction * s.thrust
    switch_bound_idx = np.zeros(p.n, dtype=np.int64)
    reachable = s.switch_times <= grid.horizon
    switch_bound_idx[reachable] = np.searchsorted(bounds, s.switch_times[reachable])
    V = np.zeros((grid.steps, p.n))
    lam = np.arange(1, p.n + 1, dtype=np.float64)
    return (lam, p.z0.coords, w_active, s.switch_times, switch_bound_idx, bounds, base_seg, V)


def time_loop(fn, repeats: int) -> float:
    fn()  # warmup: JIT compile / first-touch
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def main() -> None:
    parser = argparse.ArgumentParser(description="Compare simulation kernel backends")
    parser.add_argument("--n", type=int, default=1000, help="state coordinates")
    parser.add_argument("--steps", type=int, default=2000, help="base grid steps")
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    p, grid = build_scenario(args.n, args.steps)
    inputs = kernel_inputs(p, grid)
    backends = available_backends()

    print("bench_backends")
    print(f"n={args.n} steps={args.steps} repeats={args.repeats}")
    print(f"backends={','.join(backends)}")

    results = {}
    per_call = {}
    for backend in backends:
        elapsed = time_loop(
            lambda: simulate_segments(*inputs, backend=backend), args.repeats
        )
        per_call[backend] = elapsed
        results[backend] = simulate_segments(*inputs, backend=backend)[0]
        print(f"kernel[{backend}] per_call_ms={elapsed * 1e3:.3f}")
    if "numba" in per_call and "numpy" in per_call:
        print(f"kernel speedup numba/numpy = {per_call['numpy'] / per_call['numba']:.2f}x")
        a, b = results["numba"], results["numpy"]
        # normalize by the problem scale: near a switch the norm itself nearly
        # vanishes and pointwise relative error is meaningless there
        dev = float(np.max(np.abs(a - b)) / b[0])
        print(f"max norm deviation between backends / ||z0|| = {dev:.3e}")
        if dev > 1e-12:
            raise SystemExit("backend disagreement above 1e-12")

    for backend in backends:
        elapsed = time_loop(
            lambda: run_game(p, zero_evader(), grid, backend=backend),
            max(1, args.repeats // 10),
        )
        print(f"run_game[{backend}] per_call_ms={elapsed * 1e3:.3f}")


if __name__ == "__main__":
    main()
