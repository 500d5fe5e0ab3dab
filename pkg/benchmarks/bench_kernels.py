"""Time the numba and numpy box-enumeration kernels on the engine's own workloads.

Each workload is the exact ``enumerate_box`` call that ``critical_divisors``
makes for a slice; the script captures those arguments, checks both kernels
return the same points, and reports the best of ``--repeat`` runs.

    python benchmarks/bench_kernels.py --repeat 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import hilbnef.lattice as lattice
from hilbnef import _kernels
from hilbnef.chern import Slice
from hilbnef.dp1 import dp1_slice, dp1_surface
from hilbnef.gieseker import critical_divisors
from hilbnef.lattice import DivisorClass as D
from hilbnef.presets import p3_hypersurface


def workloads():
    dp = dp1_surface()
    yield "quintic D=-12H", Slice(p3_hypersurface(5), D([1]), D([-12]))
    yield "dp1 P(3), D=K", dp1_slice(3)
    yield "dp1 P(9), D=K", dp1_slice(9)
    yield "dp1 2(-K)+conic, D=-E-E'", Slice(dp, D([7, -3, -2, -2, -2, -2, -2, -2, -2]), D([-1, 0, 1, 1, 0, 0, 0, 0, 0]) - D([0, 0, 0, 0, 0, 0, 0, 0, 1]))
    yield "dp1 wide twist", Slice(dp, D([11, -5, -5, -5, -2, -3, -3, -2, -3]), D([-3, 1, 1, 1, 2, 1, 1, 0, 1]))


def capture(sl):
    calls = []
    real = lattice.enumerate_box

    def spy(*args, **kw):
        calls.append((args, kw))
        return real(*args, **kw)

    lattice.enumerate_box = spy
    try:
        critical_divisors(sl)
    finally:
        lattice.enumerate_box = real
    return calls[0]


def best_of(fn, args, kw, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args, **kw)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    t = time.perf_counter()
    _kernels.enumerate_box_numba([0], [1], [[1]], [0], [1])
    print(f"numba first call (compile or cache load): {time.perf_counter() - t:.3f}s\n")

    print(f"{'workload':24} {'rows':>5} {'points':>7} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for label, sl in workloads():
        a, kw = capture(sl)
        tn, pn = best_of(_kernels.enumerate_box_numba, a, kw, args.repeat)
        tp, pp = best_of(_kernels.enumerate_box_numpy, a, kw, args.repeat)
        if not np.array_equal(pn, pp):
            raise SystemExit(f"{label}: kernels disagree")
        rows = np.atleast_2d(np.asarray(a[2])).shape[0]
        print(f"{label:24} {rows:5d} {len(pn):7d} {tn:9.4f} {tp:9.4f} {tp / tn:7.1f}x")


if __name__ == "__main__":
    main()
