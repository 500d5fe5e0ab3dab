"""Built-in Picard rank one surfaces."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import PreconditionError
from .lattice import DivisorClass, IntersectionLattice, SurfaceData

__all__ = ["p3_hypersurface", "cyclic_cover", "picard_rank_one"]


def _rank_one(name, d, k, a, chi_O, metadata) -> SurfaceData:
    if d < 1:
        raise PreconditionError("H^2 = d must be positive")
    if a < 1:
        raise PreconditionError("a must be positive")
    H = DivisorClass([1])
    return SurfaceData(
        name=name,
        lattice=IntersectionLattice([[d]]),
        canonical=H * k,
        chi_O=chi_O,
        effective_generators=(H * a,),
        ample_reference=H,
        metadata={**metadata, "d": d, "a": a},
    )


def p3_hypersurface(d: int) -> SurfaceData:
    """Very general degree ``d`` surface in P^3: ``K = (d-4)H``, ``chi(O) = C(d-1, 3) + 1``."""
    if d < 1:
        raise PreconditionError("degree must be at least 1")
    return _rank_one(f"p3-hypersurface-d{d}", d, d - 4, 1, comb(d - 1, 3) + 1, {"preset": "p3-hypersurface"})


def cyclic_cover(d: int, e: int, chi_O: int | None = None) -> SurfaceData:
    """Degree ``d`` cyclic cover of P^2 branched along a degree ``e`` curve, ``H`` the pulled back line.

    ``K = (e(d-1)/d - 3) H``.  ``chi(O)`` is not derived here; pass it if
    Riemann-Roch quantities are needed.
    """
    if d < 2:
        raise PreconditionError("cover degree must be at least 2")
    if e % d:
        raise PreconditionError("d must divide e")
    if e * (d - 1) < 3 * d:
        raise PreconditionError("need e >= 3d/(d-1)")
    k = Fraction(e * (d - 1), d) - 3
    return _rank_one(
        f"cyclic-cover-d{d}-e{e}", d, int(k), 1, chi_O, {"preset": "cyclic-cover", "e": e}
    )


def picard_rank_one(d: int, k: int, a: int = 1, chi_O: int | None = None) -> SurfaceData:
    """``Pic = Z H`` with ``H^2 = d``, ``K = kH`` and minimal effective class ``aH``."""
    return _rank_one(f"picard-rank-one-d{d}-k{k}-a{a}", d, k, a, chi_O, {"preset": "picard-rank-one"})
