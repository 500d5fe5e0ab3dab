"""Blow-up of P^2 in eight general points (del Pezzo surface of degree 1).

Coordinates ``(a; c_1, ..., c_8)`` stand for ``aH + sum c_i E_i``.  In the
usual multiplicity notation ``(a; m_1, ..., m_8)`` means ``aH - sum m_i E_i``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._kernels import enumerate_box
from .chern import Slice
from .errors import PreconditionError
from .gieseker import Certificate, critical_divisors, eta, gieseker_wall
from .hilb import HCFiber, HilbDivisorClass, Pencil, intersect, nef_divisor_from_wall, pencil
from .lattice import DivisorClass, IntersectionLattice, SurfaceData
from .walls import rank_one_wall_center

__all__ = [
    "RANK",
    "MINUS_ONE_TYPES",
    "MinusOneCurveList",
    "canonical",
    "default_nef_ray",
    "minus_one_curves",
    "minus_one_curves_bruteforce",
    "conic_classes",
    "dp1_surface",
    "dp1_slice",
    "predicted_critical_set",
    "closed_form_divisor",
    "CheckResult",
    "DP1Report",
    "verify_dp1_theorems",
    "orbit_type_counts",
]

RANK = 9

# (degree; multiplicities) for one representative of each S_8 orbit
MINUS_ONE_TYPES = (
    (0, (-1,)),
    (1, (1, 1)),
    (2, (1, 1, 1, 1, 1)),
    (3, (2, 1, 1, 1, 1, 1, 1)),
    (4, (2, 2, 2, 1, 1, 1, 1, 1)),
    (5, (2, 2, 2, 2, 2, 2, 1, 1)),
    (6, (3, 2, 2, 2, 2, 2, 2, 2)),
)


def canonical() -> DivisorClass:
    return DivisorClass([-3] + [1] * 8)


def default_nef_ray() -> DivisorClass:
    return DivisorClass([1, -1] + [0] * 7)


def _lattice() -> IntersectionLattice:
    return IntersectionLattice([[1 if i == j == 0 else (-1 if i == j else 0) for j in range(RANK)] for i in range(RANK)])


@dataclass(frozen=True)
class MinusOneCurveList:
    curves: tuple[DivisorClass, ...]
    type_counts: tuple[int, ...]

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)


@lru_cache(maxsize=None)
def minus_one_curves() -> MinusOneCurveList:
    """All 240 classes, from the seven orbit types under permutations of ``E_1..E_8``."""
    seen: set[tuple[int, ...]] = set()
    counts = []
    for a, mult in MINUS_ONE_TYPES:
        padded = mult + (0,) * (8 - len(mult))
        orbit = {(a,) + tuple(-m for m in p) for p in itertools.permutations(padded)}
        counts.append(len(orbit - seen))
        seen |= orbit
    curves = tuple(DivisorClass(c) for c in sorted(seen))
    return MinusOneCurveList(curves, tuple(counts))


def minus_one_curves_bruteforce(degree_max: int = 6, mult_min: int = -1, mult_max: int = 3) -> list[DivisorClass]:
    """Exhaustive search in ``0 <= a <= degree_max``, ``mult_min <= m_i <= mult_max``
    for ``E.(-K) = 1`` and ``E^2 = -1``."""
    lo = [0] + [-mult_max] * 8
    hi = [degree_max] + [-mult_min] * 8
    # (-K).x = 3a + sum c_i
    pts = enumerate_box(lo, hi, [[3] + [1] * 8], [1], [1])
    sq = pts[:, 0] ** 2 - np.sum(pts[:, 1:] ** 2, axis=1)
    return [DivisorClass(tuple(int(v) for v in p)) for p in pts[sq == -1]]


@lru_cache(maxsize=None)
def conic_classes() -> tuple[DivisorClass, ...]:
    """Sums ``E + E'`` of (-1)-curves with ``E.E' = 1``: classes of conic bundles, all nef."""
    curves = minus_one_curves().curves
    M = np.array([c.as_ints() for c in curves], dtype=np.int64)
    G = M.copy()
    G[:, 1:] *= -1
    P = M @ G.T
    i, j = np.nonzero(np.triu(P == 1, k=1))
    sums = {tuple(int(v) for v in M[a] + M[b]) for a, b in zip(i, j)}
    return tuple(DivisorClass(s) for s in sorted(sums))


@lru_cache(maxsize=None)
def dp1_surface() -> SurfaceData:
    K = canonical()
    return SurfaceData(
        name="dp1",
        lattice=_lattice(),
        canonical=K,
        chi_O=1,
        effective_generators=minus_one_curves().curves,
        ample_reference=-K,
        nef_witnesses=conic_classes(),
        metadata={"preset": "dp1"},
    )


def _check_nef_ray(surface: SurfaceData, N: DivisorClass):
    K = surface.canonical
    if N.rank != RANK or not N.integral():
        raise PreconditionError("nef ray must be an integral class of rank 9")
    if surface.pair(N, -K) != 2 or surface.pair(N, N) != 0:
        raise PreconditionError("nef ray needs N.(-K) = 2 and N^2 = 0")
    if any(surface.pair(N, E) < 0 for E in surface.effective_generators):
        raise PreconditionError("nef ray is negative on a (-1)-curve")


def dp1_slice(n: int, nef_ray: DivisorClass | None = None) -> Slice:
    """``P = (n - 3/2)(-K) + N/2`` with twist ``D = K``."""
    if n < 2:
        raise PreconditionError("the del Pezzo slice needs n >= 2")
    surface = dp1_surface()
    N = default_nef_ray() if nef_ray is None else nef_ray
    _check_nef_ray(surface, N)
    K = surface.canonical
    return Slice(surface, (-K) * (n - Fraction(3, 2)) + N / 2, K)


def predicted_critical_set(n: int, nef_ray: DivisorClass | None = None) -> set[DivisorClass]:
    """``-K`` and the (-1)-curves with ``E.N <= 1``; for ``n = 2`` also ``N`` and the
    sums of two (-1)-curves orthogonal to ``N`` (repeats allowed)."""
    surface = dp1_surface()
    N = default_nef_ray() if nef_ray is None else nef_ray
    curves = minus_one_curves().curves
    out = {-surface.canonical}
    out |= {E for E in curves if surface.pair(E, N) <= 1}
    if n == 2:
        fiber = [E for E in curves if surface.pair(E, N) == 0]
        out.add(N)
        out |= {a + b for a, b in itertools.combinations_with_replacement(fiber, 2)}
    return out


def closed_form_divisor(n: int, nef_ray: DivisorClass | None = None) -> HilbDivisorClass:
    """``(n-1)(-K)^[n] + N^[n]/2 - B/2``."""
    N = default_nef_ray() if nef_ray is None else nef_ray
    return HilbDivisorClass(-canonical() * (n - 1) + N / 2, -1)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str = ""


@dataclass
class DP1Report:
    n: int
    nef_ray: DivisorClass
    reference_ray: bool
    checks: dict[str, CheckResult] = field(default_factory=dict)
    wall_center: Fraction | None = None
    certificate: str = ""
    critical_count: int = 0
    destabilizers: tuple[DivisorClass, ...] = ()
    n2_extras: tuple[DivisorClass, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> dict[str, str]:
        return {k: c.detail for k, c in self.checks.items() if not c.passed}


def _diff(label, got, want) -> str:
    extra = sorted(set(got) - set(want))
    missing = sorted(set(want) - set(got))
    return f"{label}: {len(extra)} unexpected {extra[:5]}, {len(missing)} missing {missing[:5]}"


def verify_dp1_theorems(n: int, nef_ray: DivisorClass | None = None) -> DP1Report:
    """Run the whole pipeline on the slice ``(P(n), K)`` and check it against
    the known closed forms: critical set, wall center ``-1``, the extremal nef
    divisor, its pairings with the curve-cone generators and the
    ``F_[n]``-orthogonal ray of ``cone(N^[n], (n-1)(-K)^[n] - B/2)``."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    N = default_nef_ray() if nef_ray is None else nef_ray
    sl = dp1_slice(n, N)
    surface = sl.surface
    K = surface.canonical
    curves = minus_one_curves().curves
    report = DP1Report(n, N, N == default_nef_ray())
    checks = report.checks

    crit = critical_divisors(sl)
    want = predicted_critical_set(n, N)
    got = set(crit.members)
    report.critical_count = len(crit)
    checks["critical_set"] = CheckResult(got == want and len(got) == len(crit), _diff("critical set", got, want))
    if n == 2:
        report.n2_extras = tuple(sorted(want - predicted_critical_set(3, N)))

    res = gieseker_wall(sl, n)
    report.wall_center = res.wall.center
    report.certificate = str(res.certificate)
    report.destabilizers = res.destabilizers
    want_destab = {-K} | {E for E in curves if surface.pair(E, N) == 0}
    ok = res.wall.is_semicircle and res.wall.center == -1 and res.certificate is not Certificate.INCONCLUSIVE
    checks["wall_center"] = CheckResult(
        ok, f"center {res.wall.center}, certificate {res.certificate}, eta {eta(sl)}"
    )
    checks["destabilizers"] = CheckResult(
        set(res.destabilizers) == want_destab, _diff("destabilizers", res.destabilizers, want_destab)
    )

    div = nef_divisor_from_wall(res.wall.center, sl) if res.wall.is_semicircle else None
    closed = closed_form_divisor(n, N)
    checks["nef_divisor"] = CheckResult(div == closed, f"got {div}, expected {closed}")

    base = HilbDivisorClass(-K * (n - 1), -1)
    bad = [E for E in curves if intersect(base, pencil(surface, E), n, surface) != 0]
    fpair = intersect(base, Pencil(-K, 1), n, surface)
    checks["pencil_pairings"] = CheckResult(
        not bad and fpair == -1, f"{len(bad)} curves with non-zero pairing, F pairing {fpair}"
    )
    gens = [pencil(surface, E) for E in curves] + [HCFiber(), Pencil(-K, 1)]
    neg = [g for g in gens if intersect(closed, g, n, surface) < 0]
    checks["divisor_nonnegative"] = CheckResult(not neg, f"{len(neg)} curve generators pair negatively")

    # t N^[n] + u ((n-1)(-K)^[n] - B/2) with F-pairing zero
    f = Pencil(-K, 1)
    pn = intersect(HilbDivisorClass(N, 0), f, n, surface)
    pb = intersect(base, f, n, surface)
    if pn * pb < 0:
        ray = HilbDivisorClass(N, 0) * (-pb / pn) + base
        checks["orthogonal_ray"] = CheckResult(ray == closed, f"ray {ray}")
    else:
        checks["orthogonal_ray"] = CheckResult(False, f"no unique orthogonal ray: pairings {pn}, {pb}")

    off = []
    for E in curves:
        s = rank_one_wall_center(n, E, 0, sl)
        if s < -1 or (s == -1) != (surface.pair(E, N) == 0):
            off.append((E, s))
    checks["curve_centers"] = CheckResult(not off, f"{len(off)} curves violate s_L >= -1 with equality iff L.N = 0")

    if n == 2:
        fiber = [E for E in curves if surface.pair(E, N) == 0]
        sums = {a + b for a, b in itertools.combinations_with_replacement(fiber, 2)}
        badsum = [
            L
            for L in sums
            if surface.pair(L, K) != -2 or surface.pair(L, L) > 0 or rank_one_wall_center(n, L, 0, sl) < 0
        ]
        checks["n2_extras"] = CheckResult(not badsum, f"{len(badsum)} sums violate L.K = -2, L^2 <= 0, s_L >= 0")
    return report


def orbit_type_counts(curves) -> Counter:
    return Counter(int(c[0]) for c in curves)
