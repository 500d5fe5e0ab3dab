"""Numerical walls in the (beta, alpha) half-plane of a slice.

Radii are irrational in general, so a semicircle is stored by its center and
squared radius and every geometric predicate here is decided exactly from
those two numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernCharacter, Slice, SlicePoint, discriminant, mumford_slope
from .errors import IncomparableWalls, NoAccumulation, UnsupportedComparison, DegenerateWall
from .lattice import DivisorClass

__all__ = [
    "Wall",
    "numerical_wall",
    "rank_one_wall_center",
    "higher_rank_bound",
    "higher_rank_bound_general",
    "accumulation_point",
    "wall_order",
    "nested_inside",
    "contains_point",
    "point_on_semicircle",
]

EVERYWHERE = "everywhere"
VERTICAL = "vertical"
SEMICIRCLE = "semicircle"
EMPTY = "empty"


@dataclass(frozen=True)
class Wall:
    kind: str
    beta: Fraction | None = None
    center: Fraction | None = None
    radius_sq: Fraction | None = None

    @classmethod
    def everywhere(cls) -> "Wall":
        return cls(EVERYWHERE)

    @classmethod
    def empty(cls) -> "Wall":
        return cls(EMPTY)

    @classmethod
    def vertical(cls, beta) -> "Wall":
        return cls(VERTICAL, beta=Fraction(beta))

    @classmethod
    def semicircle(cls, center, radius_sq) -> "Wall":
        center, radius_sq = Fraction(center), Fraction(radius_sq)
        if radius_sq <= 0:
            return cls(EMPTY)
        return cls(SEMICIRCLE, center=center, radius_sq=radius_sq)

    @property
    def is_semicircle(self) -> bool:
        return self.kind == SEMICIRCLE

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY


def numerical_wall(v: ChernCharacter, w: ChernCharacter, sl: Slice) -> Wall:
    """Locus where ``v`` and ``w`` have equal Bridgeland slope."""
    if v.rank <= 0 or w.rank <= 0:
        raise UnsupportedComparison("numerical walls are only computed between classes of positive rank")
    mu, mu2 = mumford_slope(v, sl), mumford_slope(w, sl)
    dl, dl2 = discriminant(v, sl), discriminant(w, sl)
    if mu == mu2:
        return Wall.everywhere() if dl == dl2 else Wall.vertical(mu)
    s = (mu + mu2) / 2 - (dl - dl2) / (mu - mu2)
    return Wall.semicircle(s, (s - mu) ** 2 - 2 * dl)


def rank_one_wall_center(n: int, L: DivisorClass, w_len: int, sl: Slice) -> Fraction:
    """Center of the wall between ``I_Z`` (length ``n``) and ``I_{Z'}(-L)`` (length ``w_len``)."""
    hl = sl.pair(sl.h, L)
    if hl == 0:
        raise DegenerateWall("H.L = 0: the wall is vertical or undefined")
    num = 2 * (n - w_len) + sl.pair(L, L) + 2 * sl.pair(sl.d_twist, L)
    return -Fraction(num) / (2 * hl)


def higher_rank_bound(n: int, sl: Slice) -> Fraction:
    """Bound on ``rho^2`` for walls of ``X^[n]`` from subobjects of rank >= 2."""
    d = sl.d
    hd = sl.h_dot_d
    return (2 * n * d + hd * hd - d * sl.d_squared) / (8 * d * d)


def higher_rank_bound_general(e: int, f: int, delta) -> Fraction:
    """``min(f - 1, e)^2 / (2 f) * delta`` for a rank-``f`` subobject of a rank-``e`` sheaf."""
    if e < 1 or f < 2:
        raise ValueError("need e >= 1 and f >= 2")
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    m = min(f - 1, e)
    return Fraction(m * m, 2 * f) * delta


def accumulation_point(v: ChernCharacter, sl: Slice) -> tuple[Fraction, Fraction]:
    """``(mu, 2 Delta)``; the walls left of the vertical one accumulate at ``mu - sqrt(2 Delta)``."""
    if v.rank <= 0:
        raise NoAccumulation("accumulation point needs positive rank")
    delta = discriminant(v, sl)
    if delta < 0:
        raise NoAccumulation("Delta < 0: walls do not accumulate")
    return mumford_slope(v, sl), 2 * delta


def wall_order(w1: Wall, w2: Wall) -> int:
    """``1`` if ``w1`` is the larger wall, ``-1`` if smaller, ``0`` if equal.

    Only meaningful for semicircles of one class on the same side of its
    vertical wall, where the larger wall has the smaller center.  Empty walls
    sit below everything.
    """
    for w in (w1, w2):
        if w.kind not in (SEMICIRCLE, EMPTY):
            raise IncomparableWalls(f"cannot order a {w.kind} wall")
    if w1.is_empty or w2.is_empty:
        return int(w2.is_empty) - int(w1.is_empty)
    if w1.center == w2.center:
        return 0
    return 1 if w1.center < w2.center else -1


def nested_inside(inner: Wall, outer: Wall) -> bool:
    """Whether the open semicircle ``inner`` lies strictly inside ``outer``."""
    if not (inner.is_semicircle and outer.is_semicircle):
        raise IncomparableWalls("nesting is defined for semicircles")
    s1, r1 = outer.center, outer.radius_sq
    s2, r2 = inner.center, inner.radius_sq
    # the power of inner's points w.r.t. outer is linear in beta; check both ends
    delta = s2 - s1
    t = r1 - r2 - delta * delta
    if t <= 0:
        return False
    # need 2 |delta| rho2 <= t; touching at alpha = 0 is allowed
    return 4 * delta * delta * r2 <= t * t


def contains_point(wall: Wall, p: SlicePoint) -> bool:
    """Whether ``p`` lies on ``wall``."""
    if wall.kind == EVERYWHERE:
        return True
    if wall.kind == EMPTY:
        return False
    if wall.kind == VERTICAL:
        return p.beta == wall.beta
    return (p.beta - wall.center) ** 2 + p.alpha_sq == wall.radius_sq


def point_on_semicircle(wall: Wall, offset) -> SlicePoint:
    """The point of ``wall`` at ``beta = center + offset``; needs ``offset^2 < rho^2``."""
    offset = Fraction(offset)
    return SlicePoint(wall.center + offset, wall.radius_sq - offset * offset)
