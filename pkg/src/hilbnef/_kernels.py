"""Integer box enumeration under linear constraints.

Hot loop of the engine: walk the integer points ``lo <= x <= hi`` and keep
those with ``lb <= A @ x <= ub``.  The walk is depth-first over coordinates;
rows ``[0, n_prune)`` are checked at every interior node against the best
and worst completions of the remaining coordinates, the remaining rows only
at leaves.

Two interchangeable implementations live here: a numba ``@njit`` kernel and
a vectorised numpy one (breadth-first inside bounded blocks, depth-first
across them, so memory stays flat).  Selection is by the
``HILBNEF_BACKEND`` environment variable (``numba`` or ``numpy``); numba is
the default when it imports.  Everything is int64 and exact; the wrappers
refuse inputs that could overflow.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False

__all__ = [
    "HAVE_NUMBA",
    "INT_INF",
    "backend",
    "enumerate_box",
    "enumerate_box_numba",
    "enumerate_box_numpy",
    "workers",
]

INT_INF = np.int64(2**62)
_SAFE = 2**60


def backend() -> str:
    name = os.environ.get("HILBNEF_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"HILBNEF_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


def workers() -> int:
    try:
        return max(1, int(os.environ.get("HILBNEF_WORKERS", "1")))
    except ValueError:
        return 1


def _suffix_bounds(lo, hi, A):
    lo_c = A * lo[None, :]
    hi_c = A * hi[None, :]
    mn = np.minimum(lo_c, hi_c)
    mx = np.maximum(lo_c, hi_c)
    R, dim = A.shape
    smin = np.zeros((R, dim + 1), dtype=np.int64)
    smax = np.zeros((R, dim + 1), dtype=np.int64)
    smin[:, :dim] = np.cumsum(mn[:, ::-1], axis=1)[:, ::-1]
    smax[:, :dim] = np.cumsum(mx[:, ::-1], axis=1)[:, ::-1]
    return smin, smax


def _box_numpy(lo, hi, A, lb, ub, n_prune, chunk=1 << 20):
    dim = lo.shape[0]
    P = A[:n_prune]
    smin, smax = _suffix_bounds(lo, hi, P)
    out = []

    def leaf(prefixes):
        if A.shape[0] == n_prune:
            return prefixes
        idx = np.arange(prefixes.shape[0])
        # leaf rows in blocks; points that fail drop out before the next block
        for s in range(n_prune, A.shape[0], 64):
            block = A[s : s + 64]
            vals = prefixes[idx] @ block.T
            idx = idx[np.all((vals >= lb[s : s + 64]) & (vals <= ub[s : s + 64]), axis=1)]
            if idx.size == 0:
                break
        return prefixes[idx]

    def walk(prefixes, partial, j):
        # breadth-first within a bounded block, depth-first across blocks
        if j == dim:
            pts = leaf(prefixes)
            if pts.shape[0]:
                out.append(pts)
            return
        vals = np.arange(lo[j], hi[j] + 1, dtype=np.int64)
        step = max(1, chunk // max(1, vals.shape[0] * max(1, n_prune)))
        for s in range(0, prefixes.shape[0], step):
            pre = prefixes[s : s + step]
            par = partial[s : s + step]
            cand = par[:, None, :] + vals[None, :, None] * P[:, j][None, None, :]
            ok = np.all(
                (cand + smin[:, j + 1] <= ub[:n_prune]) & (cand + smax[:, j + 1] >= lb[:n_prune]),
                axis=2,
            )
            ii, vv = np.nonzero(ok)
            if ii.size:
                walk(np.concatenate([pre[ii], vals[vv][:, None]], axis=1), cand[ii, vv], j + 1)

    walk(np.zeros((1, 0), dtype=np.int64), np.zeros((1, n_prune), dtype=np.int64), 0)
    return np.concatenate(out) if out else np.zeros((0, dim), dtype=np.int64)


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _box_numba_kernel(lo, hi, A, lb, ub, n_prune, smin, smax, out):
        dim = lo.shape[0]
        R = A.shape[0]
        cap = out.shape[0]
        partial = np.zeros((dim + 1, n_prune), dtype=np.int64)
        x = lo.copy()
        x[0] = lo[0] - 1
        # leaf rows in move-to-front order: a row that rejects once tends to reject again
        perm = np.arange(n_prune, R)
        count = 0
        depth = 0
        while depth >= 0:
            x[depth] += 1
            if x[depth] > hi[depth]:
                depth -= 1
                continue
            xv = x[depth]
            ok = True
            for r in range(n_prune):
                s = partial[depth, r] + A[r, depth] * xv
                partial[depth + 1, r] = s
                if s + smin[r, depth + 1] > ub[r] or s + smax[r, depth + 1] < lb[r]:
                    ok = False
                    break
            if not ok:
                continue
            if depth == dim - 1:
                for p in range(perm.shape[0]):
                    r = perm[p]
                    s = 0
                    for k in range(dim):
                        s += A[r, k] * x[k]
                    if s < lb[r] or s > ub[r]:
                        ok = False
                        if p:
                            perm[p] = perm[p - 1]
                            perm[p - 1] = r
                        break
                if ok:
                    if count < cap:
                        for k in range(dim):
                            out[count, k] = x[k]
                    count += 1
            else:
                depth += 1
                x[depth] = lo[depth] - 1
        return count


def _box_numba(lo, hi, A, lb, ub, n_prune):
    smin, smax = _suffix_bounds(lo, hi, A[:n_prune])
    cap = 4096
    while True:
        out = np.empty((cap, lo.shape[0]), dtype=np.int64)
        count = _box_numba_kernel(lo, hi, A, lb, ub, n_prune, smin, smax, out)
        if count <= cap:
            return out[:count]
        cap = count


def _prepare(lo, hi, A, lb, ub, n_prune):
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    A = np.atleast_2d(np.asarray(A, dtype=np.int64)).reshape(-1, lo.shape[0])
    lb = np.asarray(lb, dtype=np.int64).reshape(-1)
    ub = np.asarray(ub, dtype=np.int64).reshape(-1)
    if not (A.shape[0] == lb.shape[0] == ub.shape[0]):
        raise ValueError("constraint rows and bounds disagree in length")
    if n_prune is None:
        n_prune = A.shape[0]
    n_prune = int(min(max(n_prune, 0), A.shape[0]))
    span = int(np.max(np.maximum(np.abs(lo), np.abs(hi)), initial=0))
    if A.size and int(np.abs(A).sum(axis=1).max()) * span > _SAFE:
        raise OverflowError("box constraints may overflow int64")
    return lo, hi, A, lb, ub, n_prune


def enumerate_box_numpy(lo, hi, A, lb, ub, n_prune=None) -> np.ndarray:
    lo, hi, A, lb, ub, n_prune = _prepare(lo, hi, A, lb, ub, n_prune)
    if lo.shape[0] == 0 or np.any(hi < lo):
        return np.zeros((0, lo.shape[0]), dtype=np.int64)
    return _box_numpy(lo, hi, A, lb, ub, n_prune)


def enumerate_box_numba(lo, hi, A, lb, ub, n_prune=None) -> np.ndarray:
    if not HAVE_NUMBA:  # pragma: no cover
        raise RuntimeError("numba is not available")
    lo, hi, A, lb, ub, n_prune = _prepare(lo, hi, A, lb, ub, n_prune)
    if lo.shape[0] == 0 or np.any(hi < lo):
        return np.zeros((0, lo.shape[0]), dtype=np.int64)
    return _box_numba(lo, hi, A, lb, ub, n_prune)


def enumerate_box(lo, hi, A, lb, ub, n_prune=None) -> np.ndarray:
    """All integer ``x`` in the box with ``lb <= A @ x <= ub``, in lexicographic order.

    With ``HILBNEF_WORKERS > 1`` the box is split along its first coordinate
    and the slabs run on a thread pool (both kernels release the GIL for most
    of their work); results are concatenated in slab order, which preserves
    lexicographic order.
    """
    fn = enumerate_box_numba if backend() == "numba" else enumerate_box_numpy
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    nw = workers()
    if nw == 1 or lo.shape[0] == 0 or hi[0] <= lo[0]:
        return fn(lo, hi, A, lb, ub, n_prune)
    cuts = np.array_split(np.arange(lo[0], hi[0] + 1), min(nw, int(hi[0] - lo[0] + 1)))
    slabs = []
    for part in cuts:
        slo, shi = lo.copy(), hi.copy()
        slo[0], shi[0] = part[0], part[-1]
        slabs.append((slo, shi))
    with ThreadPoolExecutor(max_workers=nw) as pool:
        results = list(pool.map(lambda s: fn(s[0], s[1], A, lb, ub, n_prune), slabs))
    return np.concatenate(results) if results else np.zeros((0, lo.shape[0]), dtype=np.int64)
