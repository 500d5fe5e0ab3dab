"""Picard lattice model: divisor classes, the intersection pairing, effective
cone membership and enumeration of effective classes of bounded degree."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import lp
from ._kernels import INT_INF, enumerate_box
from .errors import DimensionMismatch, LatticeError, PreconditionError

log = logging.getLogger(__name__)

__all__ = [
    "DivisorClass",
    "IntersectionLattice",
    "SurfaceData",
    "pair",
    "arithmetic_genus",
    "cone_membership",
    "cone_decomposition",
    "validate_polarization",
    "enumerate_effective_below",
    "congruence_diagonal",
]


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floating point values are not accepted; use ints or Fractions")
    return Fraction(v)


class DivisorClass:
    """Exact rational vector of coordinates in a fixed lattice basis."""

    __slots__ = ("coords", "_hash", "_scaled")

    def __init__(self, coords: Iterable):
        self.coords = tuple(_frac(c) for c in coords)
        self._hash = None
        self._scaled = None

    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer numerators over the common denominator."""
        if self._scaled is None:
            den = lcm(*(c.denominator for c in self.coords)) if self.coords else 1
            self._scaled = (tuple(c.numerator * (den // c.denominator) for c in self.coords), den)
        return self._scaled

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls([0] * rank)

    @classmethod
    def basis(cls, rank: int, i: int) -> "DivisorClass":
        v = [0] * rank
        v[i] = 1
        return cls(v)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.rank != self.rank:
            raise DimensionMismatch(f"classes of rank {self.rank} and {other.rank}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return DivisorClass(-a for a in self.coords)

    def __mul__(self, k):
        if isinstance(k, DivisorClass):
            return NotImplemented
        k = _frac(k)
        return DivisorClass(k * a for a in self.coords)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = _frac(k)
        return DivisorClass(a / k for a in self.coords)

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.coords == other.coords

    def __lt__(self, other):
        return self.coords < other.coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __repr__(self):
        return f"DivisorClass({[str(c) for c in self.coords]})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def as_ints(self) -> tuple[int, ...]:
        if not self.integral():
            raise ValueError(f"{self!r} is not integral")
        return tuple(int(c) for c in self.coords)


def congruence_diagonal(gram: Sequence[Sequence]) -> list[Fraction]:
    """Diagonal of a matrix congruent to ``gram`` over Q (symmetric elimination)."""
    M = [[Fraction(v) for v in row] for row in gram]
    n = len(M)
    diag = []
    for k in range(n):
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                M[k], M[j] = M[j], M[k]
                for row in M:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is not None:
                    # row_k += row_j and col_k += col_j gives M[k][k] = 2 M[k][j]
                    for c in range(n):
                        M[k][c] += M[j][c]
                    for r in range(n):
                        M[r][k] += M[r][j]
        p = M[k][k]
        diag.append(p)
        if p == 0:
            continue
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f:
                for c in range(k, n):
                    M[i][c] -= f * M[k][c]
        for i in range(k + 1, n):
            M[k][i] = Fraction(0)
    return diag


@dataclass(frozen=True)
class IntersectionLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise LatticeError("Gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        pos, neg, zero = self.signature()
        if zero or pos != 1:
            raise LatticeError(
                f"Gram matrix has signature (+{pos}, -{neg}, 0x{zero}); Hodge index requires (1, {n - 1})"
            )

    @property
    def rank(self) -> int:
        return len(self.gram)

    def signature(self) -> tuple[int, int, int]:
        d = congruence_diagonal(self.gram)
        return (sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d))

    def pair(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        return pair(self, a, b)


def pair(lattice: IntersectionLattice, a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection number ``a . b``."""
    n = lattice.rank
    if a.rank != n or b.rank != n:
        raise DimensionMismatch(f"lattice rank {n}, classes of rank {a.rank} and {b.rank}")
    g = lattice.gram
    A, da = a.scaled()
    B, db = b.scaled()
    total = 0
    for i, ai in enumerate(A):
        if ai:
            row = g[i]
            total += ai * sum(r * bj for r, bj in zip(row, B) if r and bj)
    return Fraction(total, da * db)


def _echelon(rows: list[list[int]]) -> list[list[int]]:
    """Integer row echelon form (pivot entries positive) of the row span."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    if not rows:
        return out
    ncol = len(rows[0])
    for c in range(ncol):
        live = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            new = [piv]
            for r in live[1:]:
                q = r[c] // piv[c]
                r = [x - q * y for x, y in zip(r, piv)]
                (new if r[c] != 0 else rest).append(r)
            live = new
        if live:
            piv = live[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        rows = [r for r in rest if any(r)]
    return out


@dataclass(frozen=True, eq=False)
class SurfaceData:
    """Everything the engine needs to know about a surface X with q = 0.

    ``effective_generators`` generate the effective cone; an integral class is
    treated as effective when it is a non-negative rational combination of
    them and lies in their integer span.  ``nef_witnesses`` are optional
    classes known to pair non-negatively with every generator; they only
    speed up enumeration and are verified on construction.
    """

    name: str
    lattice: IntersectionLattice
    canonical: DivisorClass
    chi_O: int | None
    effective_generators: tuple[DivisorClass, ...]
    ample_reference: DivisorClass
    nef_witnesses: tuple[DivisorClass, ...] = ()
    metadata: Mapping = field(default_factory=dict)
    irregularity_zero: bool = True

    def __post_init__(self):
        object.__setattr__(self, "effective_generators", tuple(self.effective_generators))
        object.__setattr__(self, "nef_witnesses", tuple(self.nef_witnesses))
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))
        if not self.irregularity_zero:
            raise LatticeError("only surfaces with irregularity 0 are supported")
        n = self.lattice.rank
        for label, c in [("canonical", self.canonical), ("ample_reference", self.ample_reference)]:
            if c.rank != n:
                raise DimensionMismatch(f"{label} has rank {c.rank}, lattice rank {n}")
            if not c.integral():
                raise LatticeError(f"{label} must be integral")
        if not self.effective_generators:
            raise LatticeError("at least one effective generator is required")
        A = self.ample_reference
        if pair(self.lattice, A, A) <= 0:
            raise LatticeError("ample_reference must have positive self-intersection")
        for G in self.effective_generators:
            if G.rank != n or not G.integral():
                raise LatticeError(f"effective generator {G!r} must be an integral class of rank {n}")
            if G.is_zero():
                raise LatticeError("effective generators must be non-zero")
            if pair(self.lattice, A, G) <= 0:
                raise LatticeError(f"ample_reference does not pair positively with generator {G!r}")
        gram = np.array(self.lattice.gram, dtype=object)
        gens = np.array([G.as_ints() for G in self.effective_generators], dtype=object)
        for N in self.nef_witnesses:
            w = np.array(N.as_ints(), dtype=object)
            if np.any(gens.dot(gram.dot(w)) < 0):
                raise LatticeError(f"nef witness {N!r} is negative on an effective generator")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def pair(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        return pair(self.lattice, a, b)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        return np.array([G.as_ints() for G in self.effective_generators], dtype=np.int64)

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array(self.lattice.gram, dtype=np.int64)

    @cached_property
    def generator_span(self) -> list[list[int]]:
        return _echelon([list(G.as_ints()) for G in self.effective_generators])

    def in_generator_span(self, x: Sequence[int]) -> bool:
        x = list(x)
        for row in self.generator_span:
            c = next(i for i, v in enumerate(row) if v)
            if x[c] % row[c]:
                return False
            q = x[c] // row[c]
            if q:
                x = [a - q * b for a, b in zip(x, row)]
        return not any(x)

    def is_effective(self, L: DivisorClass) -> bool:
        """Integral cone point in the span of the generators (0 counts as effective)."""
        if not L.integral():
            return False
        if L.is_zero():
            return True
        return self.in_generator_span(L.as_ints()) and cone_membership(L, self.effective_generators)


def arithmetic_genus(surface: SurfaceData, c: DivisorClass) -> Fraction:
    """Adjunction: ``p_a(C) = 1 + (C.C + C.K)/2``."""
    return 1 + (surface.pair(c, c) + surface.pair(c, surface.canonical)) / 2


def cone_decomposition(point: DivisorClass, generators: Sequence[DivisorClass]) -> lp.LPResult:
    """Exact LP deciding ``point = sum lambda_i G_i`` with ``lambda >= 0``.

    The result's ``x`` holds the coefficients when feasible, ``farkas`` a
    separating functional when not.
    """
    if not generators:
        raise ValueError("generators must be non-empty")
    n = point.rank
    for G in generators:
        if G.rank != n:
            raise DimensionMismatch("generator rank differs from point rank")
    A = [[G.coords[i] for G in generators] for i in range(n)]
    return lp.feasible(A, list(point.coords))


def cone_membership(point: DivisorClass, generators: Sequence[DivisorClass]) -> bool:
    if point.is_zero():
        return True
    return cone_decomposition(point, generators).status == "optimal"


def validate_polarization(surface: SurfaceData, h: DivisorClass) -> bool:
    """Necessary conditions for ampleness: ``h^2 > 0`` and ``h.G > 0`` on every generator."""
    if h.rank != surface.rank:
        return False
    if surface.pair(h, h) <= 0:
        return False
    return all(surface.pair(h, G) > 0 for G in surface.effective_generators)


def _integer_form(surface: SurfaceData, h: DivisorClass) -> tuple[list[int], int]:
    """``(w, s)`` with ``w . x = s * (h . x)`` for integral ``x`` and ``w`` integral."""
    s = lcm(*(c.denominator for c in h.coords))
    hs = [int(c * s) for c in h.coords]
    gram = surface.lattice.gram
    w = [sum(gram[i][j] * hs[j] for j in range(surface.rank)) for i in range(surface.rank)]
    return w, s


def _coordinate_box(gens: np.ndarray, degrees: list[Fraction], bound: Fraction):
    """Integer bounding box of ``{sum lambda_i G_i : lambda >= 0, sum lambda_i deg_i <= bound}``.

    Two exact LPs per coordinate (one constraint row plus a slack column).
    """
    row = list(degrees) + [1]
    lo, hi = [], []
    for j in range(gens.shape[1]):
        col = [int(v) for v in gens[:, j]] + [0]
        top = lp.maximize(col, [row], [bound])
        bot = lp.maximize([-v for v in col], [row], [bound])
        hi.append(floor(top.value))
        lo.append(ceil(-bot.value))
    return lo, hi


_PRUNE_WITNESSES = 12


def enumerate_effective_below(
    surface: SurfaceData, polarization: DivisorClass, bound
) -> list[DivisorClass]:
    """Non-zero effective integral classes ``L`` with ``0 < polarization . L < bound``.

    Output is sorted lexicographically by coordinates.
    """
    bound = _frac(bound)
    if bound <= 0:
        return []
    if not validate_polarization(surface, polarization):
        raise PreconditionError("polarization fails the ampleness checks for this surface")
    gens = surface.generator_matrix
    degrees = [surface.pair(polarization, G) for G in surface.effective_generators]
    lo, hi = _coordinate_box(gens, degrees, bound)

    w, s = _integer_form(surface, polarization)
    top = s * bound
    deg_ub = ceil(top) - 1
    rows = [w]
    lbs = [1]
    ubs = [deg_ub]
    if surface.ample_reference != polarization:
        a, _ = _integer_form(surface, surface.ample_reference)
        rows.append(a)
        lbs.append(1)
        ubs.append(int(INT_INF))
    # the sparsest nef witnesses also prune interior nodes; the rest are leaf checks
    wit = sorted((_integer_form(surface, N)[0] for N in surface.nef_witnesses),
                 key=lambda v: sum(1 for x in v if x))
    n_prune = len(rows) + min(len(wit), _PRUNE_WITNESSES)
    for v in wit:
        rows.append(v)
        lbs.append(0)
        ubs.append(int(INT_INF))
    pts = enumerate_box(lo, hi, rows, lbs, ubs, n_prune=n_prune)
    log.debug("box %s..%s: %d candidates after integer cuts", lo, hi, len(pts))

    # cheapest certificate first: a generator plus an already accepted class
    w_arr = np.array(w, dtype=np.int64)
    order = np.argsort(pts @ w_arr, kind="stable") if len(pts) else []
    gen_set = {tuple(int(v) for v in g) for g in gens}
    gen_list = [tuple(int(v) for v in g) for g in gens]
    accepted: set[tuple[int, ...]] = set()
    for idx in order:
        x = tuple(int(v) for v in pts[idx])
        if not surface.in_generator_span(x):
            continue
        ok = x in gen_set or any(
            tuple(a - b for a, b in zip(x, g)) in accepted for g in gen_list
        )
        if not ok:
            ok = cone_membership(DivisorClass(x), surface.effective_generators)
        if ok:
            accepted.add(x)
    return [DivisorClass(x) for x in sorted(accepted)]
