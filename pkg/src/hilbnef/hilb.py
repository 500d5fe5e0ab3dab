"""Divisor and curve classes on X^[n] and the nef divisors coming from walls.

``Pic(X^[n]) = Pic(X) + Z (B/2)``; a divisor is stored as ``L^[n] + b (B/2)``.
Curve classes are the three standard families: a moving point on a fixed
curve (``MovingPoint``), the divisors of a degree-n pencil on a curve
(``Pencil``), and a fiber of the Hilbert-Chow morphism (``HCFiber``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernCharacter, Slice, euler_pairing
from .errors import PreconditionError
from .lattice import DivisorClass, SurfaceData, arithmetic_genus

__all__ = [
    "HilbDivisorClass",
    "MovingPoint",
    "Pencil",
    "HCFiber",
    "pencil",
    "intersect",
    "nef_divisor_from_wall",
    "w_sigma_vector",
    "donaldson_image",
    "ExtremalityCertificate",
    "extremality_certificate",
    "has_smooth_member",
    "pic_rank1_nef",
]


@dataclass(frozen=True)
class HilbDivisorClass:
    l_part: DivisorClass
    b_half_coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b_half_coeff", Fraction(self.b_half_coeff))

    def __add__(self, other: "HilbDivisorClass") -> "HilbDivisorClass":
        return HilbDivisorClass(self.l_part + other.l_part, self.b_half_coeff + other.b_half_coeff)

    def __mul__(self, k) -> "HilbDivisorClass":
        k = Fraction(k)
        return HilbDivisorClass(self.l_part * k, self.b_half_coeff * k)

    __rmul__ = __mul__

    def normalized(self) -> "HilbDivisorClass":
        """Positive rescaling with ``b_half_coeff = -1``."""
        if self.b_half_coeff >= 0:
            raise ValueError("only classes with negative B coefficient can be normalized")
        return self * (-1 / self.b_half_coeff)

    def __str__(self):
        return f"{self.l_part}^[n] + ({self.b_half_coeff}) B/2"


@dataclass(frozen=True)
class MovingPoint:
    """One point moving along ``C``, the other ``n-1`` fixed away from it."""

    C: DivisorClass


@dataclass(frozen=True)
class Pencil:
    """Rational curve in ``X^[n]`` swept by a ``g^1_n`` on a curve of class ``C``."""

    C: DivisorClass
    genus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "genus", Fraction(self.genus))


@dataclass(frozen=True)
class HCFiber:
    """Curve contracted by the Hilbert-Chow morphism."""


HilbCurveClass = MovingPoint | Pencil | HCFiber


def pencil(surface: SurfaceData, C: DivisorClass) -> Pencil:
    return Pencil(C, arithmetic_genus(surface, C))


def intersect(div: HilbDivisorClass, curve, n: int, surface: SurfaceData) -> Fraction:
    """Exact pairing.  ``B.C_[n] = 2g - 2 + 2n`` (Riemann-Hurwitz), ``B.C~_[n] = 0``,
    and ``(B/2).HCFiber = -1``."""
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(curve, MovingPoint):
        return surface.pair(div.l_part, curve.C)
    if isinstance(curve, Pencil):
        return surface.pair(div.l_part, curve.C) + div.b_half_coeff * (curve.genus - 1 + n)
    if isinstance(curve, HCFiber):
        return -div.b_half_coeff
    raise TypeError(f"not a curve class: {curve!r}")


def nef_divisor_from_wall(center, sl: Slice) -> HilbDivisorClass:
    """``K/2 - s_W H - D`` together with ``-B/2``."""
    s = Fraction(center)
    K = sl.surface.canonical
    return HilbDivisorClass(K / 2 - sl.h * s - sl.d_twist, -1)


def w_sigma_vector(center, sl: Slice, v: ChernCharacter) -> ChernCharacter:
    """``(-1, -K/2 + s_W H + D, m)`` with ``m`` fixed by ``(v, w) = 0``."""
    surface = sl.surface
    s = Fraction(center)
    c1 = surface.canonical * Fraction(-1, 2) + sl.h * s + sl.d_twist
    base = euler_pairing(surface, v, ChernCharacter(-1, c1, 0))
    slope = euler_pairing(surface, v, ChernCharacter(-1, c1, 1)) - base
    if slope == 0:
        raise PreconditionError("Euler pairing does not depend on ch2; cannot solve for m")
    return ChernCharacter(-1, c1, -base / slope)


def donaldson_image(w: ChernCharacter) -> HilbDivisorClass:
    """Divisor attached to ``w`` orthogonal to ``(1, 0, -n)``, normalized to ``-B/2``.

    The class ``(r, c, m)`` maps to a multiple of ``(c/r)^[n] - B/2``.
    """
    if w.rank == 0:
        raise PreconditionError("rank-zero vector has no normalized divisor image")
    return HilbDivisorClass(w.c1 / w.rank, -1)


GENUS_BOUND = "ExtremalByGenusBound"
BRILL_NOETHER = "ExtremalByBrillNoether"
PRESET_SERIES = "ExtremalByPresetSeries"
NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class ExtremalityCertificate:
    kind: str
    description: str
    threshold: Fraction | None
    inequality: str

    @property
    def certified(self) -> bool:
        return self.kind != NOT_CERTIFIED


def has_smooth_member(surface: SurfaceData, L: DivisorClass) -> bool:
    """Whether the preset data guarantees a smooth curve in ``|L|``.

    Positive multiples of the hyperplane class on the rank-one presets are base
    point free; on the degree-one del Pezzo the (-1)-curves and ``-K`` qualify.
    """
    preset = surface.metadata.get("preset")
    if preset in ("p3-hypersurface", "cyclic-cover") and surface.rank == 1:
        return L.integral() and L[0] >= 1
    if preset == "dp1":
        K = surface.canonical
        if L == -K:
            return True
        return surface.pair(L, L) == -1 and surface.pair(L, K) == -1 and surface.is_effective(L)
    return False


def _preset_series(surface: SurfaceData, L: DivisorClass, n: int):
    preset = surface.metadata.get("preset")
    if surface.rank != 1 or L != DivisorClass([1]):
        return None
    d = surface.metadata.get("d")
    if preset == "p3-hypersurface":
        return d - 1, "projection from a point of a smooth hyperplane section"
    if preset == "cyclic-cover":
        return d, "hyperplane section maps d:1 onto a line"
    return None


def extremality_certificate(surface: SurfaceData, L: DivisorClass, n: int) -> ExtremalityCertificate:
    """Why the nef divisor orthogonal to the ``L``-pencil is extremal, if known.

    Checked in order: a preset pencil of low degree, ``n >= p_a(L) + 1``, and
    ``n >= ceil((g + 2)/2)`` when ``|L|`` has a smooth member.
    """
    series = _preset_series(surface, L, n)
    if series is not None:
        t, what = series
        if n >= t:
            return ExtremalityCertificate(PRESET_SERIES, what, Fraction(t), f"n = {n} >= {t}")
    g = arithmetic_genus(surface, L)
    if n >= g + 1:
        return ExtremalityCertificate(
            GENUS_BOUND, "every curve of genus g carries a g^1_n", g + 1, f"n = {n} >= p_a + 1 = {g + 1}"
        )
    if g >= 0 and has_smooth_member(surface, L):
        t = math.ceil((g + 2) / 2)
        if n >= t:
            return ExtremalityCertificate(
                BRILL_NOETHER,
                "a smooth curve of genus g has a g^1_n",
                Fraction(t),
                f"n = {n} >= ceil((g + 2)/2) = {t}",
            )
    return ExtremalityCertificate(NOT_CERTIFIED, "no known pencil of degree n", None, "")


NEF_AND_EXTREMAL = "NefAndExtremal"
NEF_ONLY = "NefOnly"
UNKNOWN = "Unknown"


def pic_rank1_nef(surface: SurfaceData, n: int, a: int):
    """``K/2 + (a/2 + n/(a d)) H`` with ``-B/2``, and what is known about it.

    Nef once ``n >= a^2 d``, or for ``a = 1`` once ``2n > d``; extremal when
    additionally a pencil on a curve in ``|aH|`` is certified.
    """
    if surface.rank != 1:
        raise PreconditionError("picard rank must be 1")
    if a < 1 or n < 1:
        raise ValueError("a and n must be positive")
    H = DivisorClass([1])
    d = surface.pair(H, H)
    if not surface.is_effective(H * a) or any(surface.is_effective(H * k) for k in range(1, a)):
        raise PreconditionError(f"{a}H is not the minimal effective multiple of H")
    coeff = Fraction(a, 2) + Fraction(n) / (a * d)
    div = HilbDivisorClass(surface.canonical / 2 + H * coeff, -1)
    nef = n >= a * a * d or (a == 1 and 2 * n > d)
    if not nef:
        return div, UNKNOWN
    ext = extremality_certificate(surface, H * a, n)
    return div, NEF_AND_EXTREMAL if ext.certified else NEF_ONLY

