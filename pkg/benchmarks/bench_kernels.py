#!/usr/bin/env python3
"""Compare the compiled kernels against the numpy fallback.

Times the two hot paths (the per-pose balancing-error grid used by field
maps and the optimiser objective, and the per-angle torque sweep used by
the bench module) on representative sizes and reports the speedup plus
the largest numerical deviation between the implementations.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from armbalance import _core_py

try:
    from armbalance import _core
except ImportError:
    _core = None

ARGS = dict(a=0.05, delta_s=0.0139, k=6121.4, l0=0.05, f0=30.0, b0=0.0451, constant_b=False)
ERR_ARGS = dict(moment_arm=0.234, mass=1.86, gravity=9.81)


def best_of(fn, repeats=7, loops=20):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(loops):
            fn()
        best = min(best, (time.perf_counter() - start) / loops)
    return best


def bench_case(name, size, make_input, run):
    data = make_input(size)
    rows = []
    ref = None
    for label, module in (("numpy", _core_py), ("compiled", _core)):
        if module is None:
            continue
        out = run(module, data)
        t = best_of(lambda m=module: run(m, data))
        rows.append((label, t, out))
        ref = out if ref is None else ref
    print(f"{name} (n = {size})")
    base = rows[0][1]
    for label, t, out in rows:
        dev = float(np.nanmax(np.abs(out - ref))) if out is not ref else 0.0
        print(
            f"  {label:9s} {t * 1e6:9.1f} us  {t / size * 1e9:7.2f} ns/elem"
            f"  x{base / t:5.2f}  max|diff| {dev:.3e}"
        )
    print()


def main():
    if _core is None:
        print("compiled extension not available; timing the fallback only\n")
    rng = np.random.default_rng(0)

    def phi_grid(n):
        return np.ascontiguousarray(np.radians(rng.uniform(-80.0, 25.0, n)))

    def theta_grid(n):
        return np.ascontiguousarray(np.radians(rng.uniform(-80.0, 80.0, n)))

    for size in (2_706, 100_000):
        bench_case(
            "balance_error_curve",
            size,
            phi_grid,
            lambda m, d: m.balance_error_curve(d, **ARGS, **ERR_ARGS),
        )
    for size in (133, 100_000):
        bench_case(
            "device_torque_curve",
            size,
            theta_grid,
            lambda m, d: m.device_torque_curve(d, **ARGS),
        )


if __name__ == "__main__":
    main()
