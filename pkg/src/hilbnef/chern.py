"""Chern characters on a surface and the slope functions of an (H, D)-slice."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering

from .errors import LatticeError, PreconditionError, UndefinedDiscriminant
from .lattice import DivisorClass, SurfaceData, cone_membership, validate_polarization

log = logging.getLogger(__name__)

__all__ = [
    "INFINITY",
    "ChernCharacter",
    "Slice",
    "SlicePoint",
    "ideal_sheaf",
    "line_bundle",
    "twist",
    "dual",
    "product",
    "mumford_slope",
    "discriminant",
    "central_charge",
    "bridgeland_slope",
    "euler_characteristic",
    "euler_pairing",
    "ext_euler",
    "numerically_in_T_beta",
]


@total_ordering
class _PositiveInfinity:
    """Slope of torsion classes; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("+inf-slope")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "+inf"


INFINITY = _PositiveInfinity()


@dataclass(frozen=True)
class ChernCharacter:
    rank: Fraction
    c1: DivisorClass
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rank", Fraction(self.rank))
        object.__setattr__(self, "ch2", Fraction(self.ch2))
        if not isinstance(self.c1, DivisorClass):
            object.__setattr__(self, "c1", DivisorClass(self.c1))

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.rank + other.rank, self.c1 + other.c1, self.ch2 + other.ch2)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.rank - other.rank, self.c1 - other.c1, self.ch2 - other.ch2)

    def __neg__(self):
        return ChernCharacter(-self.rank, -self.c1, -self.ch2)

    def __mul__(self, k):
        return ChernCharacter(k * self.rank, self.c1 * k, k * self.ch2)

    __rmul__ = __mul__


def ideal_sheaf(n: int, rank: int) -> ChernCharacter:
    """``ch(I_Z) = (1, 0, -n)`` for ``Z`` of length ``n``."""
    return ChernCharacter(1, DivisorClass.zero(rank), -n)


def line_bundle(surface: SurfaceData, L: DivisorClass) -> ChernCharacter:
    """``ch(O_X(L)) = (1, L, L^2/2)``."""
    return ChernCharacter(1, L, surface.pair(L, L) / 2)


@dataclass(frozen=True, eq=False)
class Slice:
    """Polarization ``h`` and antieffective twist ``d_twist`` on ``surface``.

    ``D = 0`` is allowed but flagged as degenerate; downstream certificates
    refuse degenerate slices.
    """

    surface: SurfaceData
    h: DivisorClass
    d_twist: DivisorClass

    def __post_init__(self):
        if not validate_polarization(self.surface, self.h):
            raise LatticeError("polarization fails h^2 > 0 and h.G > 0 on the effective generators")
        if self.d_twist.rank != self.surface.rank:
            raise LatticeError("twist divisor has the wrong rank")
        if self.d_twist.is_zero():
            log.warning("slice with D = 0 is degenerate; no Gieseker certificate will be issued")
        elif not cone_membership(-self.d_twist, self.surface.effective_generators):
            raise PreconditionError("-D is not in the effective cone")

    @cached_property
    def d(self) -> Fraction:
        return self.surface.pair(self.h, self.h)

    @property
    def degenerate(self) -> bool:
        return self.d_twist.is_zero()

    def pair(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        return self.surface.pair(a, b)

    @cached_property
    def h_dot_d(self) -> Fraction:
        return self.surface.pair(self.h, self.d_twist)

    @cached_property
    def d_squared(self) -> Fraction:
        return self.surface.pair(self.d_twist, self.d_twist)


@dataclass(frozen=True)
class SlicePoint:
    beta: Fraction
    alpha_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "alpha_sq", Fraction(self.alpha_sq))
        if self.alpha_sq <= 0:
            raise ValueError("alpha^2 must be positive")


def twist(surface: SurfaceData, v: ChernCharacter, D: DivisorClass) -> ChernCharacter:
    """``ch^D = e^{-D} ch``."""
    r = v.rank
    return ChernCharacter(
        r,
        v.c1 - D * r,
        v.ch2 - surface.pair(D, v.c1) + surface.pair(D, D) / 2 * r,
    )


def dual(v: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(v.rank, -v.c1, v.ch2)


def product(surface: SurfaceData, v: ChernCharacter, w: ChernCharacter) -> ChernCharacter:
    """Product in the numerical Chern ring (truncated at degree 2)."""
    return ChernCharacter(
        v.rank * w.rank,
        w.c1 * v.rank + v.c1 * w.rank,
        v.rank * w.ch2 + w.rank * v.ch2 + surface.pair(v.c1, w.c1),
    )


def mumford_slope(v: ChernCharacter, sl: Slice):
    """``mu_{H,D}(v)``; rank-zero classes get ``INFINITY``."""
    if v.rank == 0:
        return INFINITY
    t = twist(sl.surface, v, sl.d_twist)
    return sl.pair(sl.h, t.c1) / (sl.d * t.rank)


def discriminant(v: ChernCharacter, sl: Slice) -> Fraction:
    if v.rank == 0:
        raise UndefinedDiscriminant("discriminant needs non-zero rank")
    t = twist(sl.surface, v, sl.d_twist)
    mu = sl.pair(sl.h, t.c1) / (sl.d * t.rank)
    return mu * mu / 2 - t.ch2 / (sl.d * t.rank)


def central_charge(v: ChernCharacter, sl: Slice, p: SlicePoint) -> tuple[Fraction, Fraction]:
    """``(Re Z, Im Z)`` of ``Z_{beta,alpha}(v)``; only ``alpha^2`` enters."""
    t = twist(sl.surface, v, sl.d_twist + sl.h * p.beta)
    re = -t.ch2 + p.alpha_sq * sl.d / 2 * t.rank
    im = sl.pair(sl.h, t.c1)
    return re, im


def bridgeland_slope(v: ChernCharacter, sl: Slice, p: SlicePoint):
    """``nu = -Re Z / Im Z``; ``INFINITY`` where ``Im Z = 0``.

    Positive rank goes through slope and discriminant,
    ``((mu - beta)^2 - alpha^2 - 2 Delta) / (2 (mu - beta))``.
    """
    if v.rank == 0:
        re, im = central_charge(v, sl, p)
        return INFINITY if im == 0 else -re / im
    mu = mumford_slope(v, sl)
    delta = discriminant(v, sl)
    x = mu - p.beta
    if x == 0:
        return INFINITY
    return (x * x - p.alpha_sq - 2 * delta) / (2 * x)


def euler_characteristic(surface: SurfaceData, v: ChernCharacter) -> Fraction:
    """Riemann-Roch for q = 0: ``chi = ch2 - K.ch1/2 + ch0 chi(O_X)``."""
    if surface.chi_O is None:
        raise PreconditionError(f"surface {surface.name!r} has no chi(O_X) on record")
    return v.ch2 - surface.pair(surface.canonical, v.c1) / 2 + v.rank * surface.chi_O


def euler_pairing(surface: SurfaceData, v: ChernCharacter, w: ChernCharacter) -> Fraction:
    """``(v, w) = chi(v . w)``."""
    return euler_characteristic(surface, product(surface, v, w))


def ext_euler(surface: SurfaceData, e: ChernCharacter, f: ChernCharacter) -> Fraction:
    """``chi(E, F) = sum (-1)^i ext^i(E, F) = chi(e^dual . f)``."""
    return euler_characteristic(surface, product(surface, dual(e), f))


def numerically_in_T_beta(v: ChernCharacter, sl: Slice, beta) -> bool:
    """Slope proxy for membership in the torsion part of the tilt: ``mu > beta``.

    Only a numerical diagnostic; it says nothing about quotients of an
    actual sheaf.
    """
    if v.rank < 0:
        raise ValueError("rank must be non-negative")
    mu = mumford_slope(v, sl)
    return mu is INFINITY or mu > Fraction(beta)
