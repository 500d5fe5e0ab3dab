"""Gieseker walls for Hilbert schemes of points from critical divisors."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernCharacter, Slice, ideal_sheaf, line_bundle, mumford_slope
from .errors import CertificateRefused, HilbNefError, PreconditionError
from .lattice import DivisorClass, enumerate_effective_below
from .walls import (
    Wall,
    higher_rank_bound,
    numerical_wall,
    rank_one_wall_center,
    wall_order,
)

__all__ = [
    "Certificate",
    "CriticalDivisorSet",
    "GiesekerWallResult",
    "JordanHolderReport",
    "AsymptoticDestabilizer",
    "eta",
    "critical_divisors",
    "gieseker_wall",
    "jordan_holder_report",
    "asymptotic_destabilizer",
]


class Certificate(str, enum.Enum):
    ETA_BOUND = "EtaBound"
    RADIUS_DOMINATES = "RadiusDominatesHigherRank"
    PIC_RANK_ONE_HALF_DEGREE = "PicRankOneHalfDegree"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CriticalDivisorSet:
    members: tuple[DivisorClass, ...]
    includes_minus_D: bool = True
    degenerate: bool = False

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, L):
        return L in self.members


@dataclass(frozen=True)
class GiesekerWallResult:
    n: int
    wall: Wall
    destabilizers: tuple[DivisorClass, ...]
    certificate: Certificate
    jordan_holder_unique: bool
    eta: Fraction
    varrho: Fraction
    degenerate: bool = False

    @property
    def certified(self) -> bool:
        return self.certificate is not Certificate.INCONCLUSIVE


@dataclass(frozen=True)
class JordanHolderReport:
    # one (L, ch O(-L), ch I_{Z in C}) triple per destabilizing critical divisor
    factors: tuple[tuple[DivisorClass, ChernCharacter, ChernCharacter], ...]
    unique: bool


@dataclass(frozen=True)
class AsymptoticDestabilizer:
    divisor: DivisorClass
    ties: tuple[DivisorClass, ...]
    n0: Fraction
    certified_from: Fraction


def eta(sl: Slice) -> Fraction:
    """``((H.D)^2 + d D^2) / (2d)``: from this ``n`` on, the largest critical wall is the Gieseker wall."""
    d = sl.d
    return (sl.h_dot_d ** 2 + d * sl.d_squared) / (2 * d)


def critical_divisors(sl: Slice) -> CriticalDivisorSet:
    """``{-D}`` together with the effective ``L`` with ``H.L < H.(-D)``."""
    rank = sl.surface.rank
    if sl.degenerate:
        return CriticalDivisorSet((DivisorClass.zero(rank),), degenerate=True)
    minus_d = -sl.d_twist
    others = enumerate_effective_below(sl.surface, sl.h, sl.pair(sl.h, minus_d))
    for L in others:
        mu = mumford_slope(line_bundle(sl.surface, -L), sl)
        if not mu > 0:
            raise HilbNefError(f"critical divisor {L!r} has mu(O(-L)) = {mu} <= 0")
    return CriticalDivisorSet((minus_d, *others))


def _pic_rank_one_applies(sl: Slice, n: int) -> bool:
    surface = sl.surface
    if surface.rank != 1:
        return False
    H = DivisorClass([1])
    return (
        sl.h == H
        and sl.d_twist == -H
        and surface.is_effective(H)
        and 2 * n > sl.d
    )


def _candidate_walls(sl: Slice, n: int, crit: CriticalDivisorSet):
    v = ideal_sheaf(n, sl.surface.rank)
    mu_v = mumford_slope(v, sl)
    out = []
    for L in crit:
        w = numerical_wall(v, line_bundle(sl.surface, -L), sl)
        if w.is_semicircle:
            if w.center != rank_one_wall_center(n, L, 0, sl):
                raise HilbNefError("wall center disagrees with the rank-one closed form")
            if w.center >= mu_v:
                continue
        out.append((L, w))
    return out


def gieseker_wall(sl: Slice, n: int) -> GiesekerWallResult:
    """Largest rank-one wall for ``X^[n]`` over the critical divisors, with the
    strongest certificate that it is the Gieseker wall."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if 2 * n <= sl.d_squared:
        raise PreconditionError(f"need 2n > D^2, got 2n = {2 * n}, D^2 = {sl.d_squared}")
    e = eta(sl)
    rho_bound = higher_rank_bound(n, sl)
    crit = critical_divisors(sl)
    if crit.degenerate:
        return GiesekerWallResult(
            n, Wall.empty(), crit.members, Certificate.INCONCLUSIVE, False, e, rho_bound, degenerate=True
        )
    walls = _candidate_walls(sl, n, crit)
    best = Wall.empty()
    for _, w in walls:
        if w.is_semicircle and wall_order(w, best) > 0:
            best = w
    if best.is_empty:
        return GiesekerWallResult(
            n, best, (crit.members[0],), Certificate.INCONCLUSIVE, False, e, rho_bound
        )
    destab = tuple(sorted(L for L, w in walls if w.is_semicircle and wall_order(w, best) == 0))
    if n >= e:
        cert = Certificate.ETA_BOUND
    elif best.radius_sq >= rho_bound:
        cert = Certificate.RADIUS_DOMINATES
    elif _pic_rank_one_applies(sl, n):
        cert = Certificate.PIC_RANK_ONE_HALF_DEGREE
    else:
        cert = Certificate.INCONCLUSIVE
    unique = cert is not Certificate.INCONCLUSIVE and len(destab) == 1 and n > e
    return GiesekerWallResult(n, best, destab, cert, unique, e, rho_bound)


def jordan_holder_report(result: GiesekerWallResult, sl: Slice, n: int) -> JordanHolderReport:
    """Destabilizing sequences ``0 -> O(-C) -> I_Z -> I_{Z in C} -> 0`` along the wall."""
    if result.certificate not in (Certificate.ETA_BOUND, Certificate.RADIUS_DOMINATES):
        raise CertificateRefused(f"no Jordan-Holder information for certificate {result.certificate}")
    if n <= result.eta:
        raise CertificateRefused(f"exact sequence only guaranteed for n > eta = {result.eta}")
    v = ideal_sheaf(n, sl.surface.rank)
    factors = []
    for L in result.destabilizers:
        sub = line_bundle(sl.surface, -L)
        factors.append((L, sub, v - sub))
    return JordanHolderReport(tuple(factors), result.jordan_holder_unique)


def asymptotic_destabilizer(sl: Slice) -> AsymptoticDestabilizer:
    """Critical divisor whose wall is largest for all large ``n``.

    The center of ``O(-L)``'s wall is ``-n/(H.L) + c_L``; the winner has the
    smallest ``H.L``, then the smallest ``c_L``.  ``n0`` is the last crossing
    with any non-tied competitor, ``certified_from`` additionally waits for
    ``n >= eta`` (and ``2n > D^2``).
    """
    crit = critical_divisors(sl)
    if crit.degenerate:
        raise PreconditionError("degenerate slice (D = 0)")

    def key(L):
        h = sl.pair(sl.h, L)
        c = -(sl.pair(L, L) + 2 * sl.pair(sl.d_twist, L)) / (2 * h)
        return h, c

    keyed = sorted(((key(L), L) for L in crit), key=lambda t: (t[0], t[1].coords))
    (h0, c0), winner = keyed[0]
    ties = tuple(L for (h, c), L in keyed if (h, c) == (h0, c0))
    n0 = Fraction(0)
    for (h, c), L in keyed:
        if (h, c) == (h0, c0) or h == h0:
            continue
        n0 = max(n0, (c - c0) / (1 / h - 1 / h0))
    floor_n = sl.d_squared / 2
    return AsymptoticDestabilizer(winner, ties, n0, max(n0, eta(sl), floor_n))
