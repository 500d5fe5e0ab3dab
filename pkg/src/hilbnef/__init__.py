"""Exact computation of Gieseker walls and extremal nef divisors on Hilbert schemes of points."""

from .chern import ChernCharacter, Slice, SlicePoint
from .errors import HilbNefError
from .gieseker import Certificate, critical_divisors, gieseker_wall
from .hilb import HilbDivisorClass, nef_divisor_from_wall
from .lattice import DivisorClass, IntersectionLattice, SurfaceData

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ChernCharacter",
    "DivisorClass",
    "HilbDivisorClass",
    "HilbNefError",
    "IntersectionLattice",
    "Slice",
    "SlicePoint",
    "SurfaceData",
    "critical_divisors",
    "gieseker_wall",
    "nef_divisor_from_wall",
]
