import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import hermite_normal_form

from hilbnef.dp1 import canonical, dp1_slice, dp1_surface, minus_one_curves
from hilbnef.errors import DimensionMismatch, LatticeError, PreconditionError
from hilbnef.lattice import (
    DivisorClass,
    IntersectionLattice,
    SurfaceData,
    arithmetic_genus,
    cone_decomposition,
    cone_membership,
    congruence_diagonal,
    enumerate_effective_below,
    pair,
    validate_polarization,
)
from hilbnef.presets import p3_hypersurface, picard_rank_one

D = DivisorClass


def cone_oracle_2d(x, gens):
    """Caratheodory in the plane: x is a non-negative combination of at most two generators."""
    x = [Fraction(v) for v in x]
    if not any(x):
        return True
    for g in gens:
        # x = t g, t >= 0
        det = x[0] * g[1] - x[1] * g[0]
        dot = x[0] * g[0] + x[1] * g[1]
        if det == 0 and dot > 0:
            return True
    for g, h in itertools.combinations(gens, 2):
        det = g[0] * h[1] - g[1] * h[0]
        if det == 0:
            continue
        s = Fraction(x[0] * h[1] - x[1] * h[0], det)
        t = Fraction(g[0] * x[1] - g[1] * x[0], det)
        if s >= 0 and t >= 0:
            return True
    return False


def span_oracle(x, gens):
    H = hermite_normal_form(sympy.Matrix([list(g) for g in gens]).T)
    try:
        sol, params = H.gauss_jordan_solve(sympy.Matrix(list(x)))
    except ValueError:
        return False
    assert params.shape[0] == 0
    return all(v.is_integer for v in sol)


def test_divisor_class_arithmetic():
    a, b = D([1, 2]), D([Fraction(1, 2), -1])
    assert a + b == D([Fraction(3, 2), 1])
    assert a - b == D([Fraction(1, 2), 3])
    assert -a == D([-1, -2])
    assert a * 2 == D([2, 4]) == 2 * a
    assert a / 2 == D([Fraction(1, 2), 1])
    assert b.integral() is False and a.integral() is True
    assert a.as_ints() == (1, 2)
    assert D.zero(3).is_zero() and D.basis(3, 1) == D([0, 1, 0])
    assert hash(D([1, 2])) == hash(a)


def test_divisor_class_rejects_floats():
    with pytest.raises(TypeError):
        D([1.5, 2])
    with pytest.raises(TypeError):
        D([1, 2]) * 0.5


def test_rank_mismatch():
    with pytest.raises(DimensionMismatch):
        D([1]) + D([1, 2])
    with pytest.raises(DimensionMismatch):
        pair(IntersectionLattice([[1]]), D([1]), D([1, 0]))


def test_pair_examples():
    S = dp1_surface()
    K = canonical()
    assert S.pair(K, K) == 1
    assert S.pair(K, D.zero(9)) == 0
    Q = p3_hypersurface(5)
    assert Q.pair(D([1]), D([1])) == 5


def test_lattice_validation():
    with pytest.raises(LatticeError):
        IntersectionLattice([[1, 2], [0, -1]])
    with pytest.raises(LatticeError):
        IntersectionLattice([[1, 0], [0, 1]])
    with pytest.raises(LatticeError):
        IntersectionLattice([[1, 0], [0, 0]])
    assert IntersectionLattice([[0, 1], [1, 0]]).signature() == (1, 1, 0)


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_signature_matches_eigenvalues(vals):
    a, b, c, d, e, f = vals
    M = [[a, b, c], [b, d, e], [c, e, f]]
    det = sympy.Matrix(M).det()
    diag = congruence_diagonal(M)
    zeros = sum(x == 0 for x in diag)
    assert zeros == 3 - sympy.Matrix(M).rank()
    if det != 0:
        ev = np.linalg.eigvalsh(np.array(M, dtype=float))
        assert sum(x > 0 for x in diag) == int(np.sum(ev > 0))
        assert sum(x < 0 for x in diag) == int(np.sum(ev < 0))


def test_preset_signatures():
    for S in (dp1_surface(), p3_hypersurface(5), picard_rank_one(3, 1, 2)):
        pos, neg, zero = S.lattice.signature()
        assert (pos, neg, zero) == (1, S.rank - 1, 0)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(st.lists(rationals, min_size=9, max_size=9), st.lists(rationals, min_size=9, max_size=9),
       st.lists(rationals, min_size=9, max_size=9))
def test_pair_bilinear_symmetric(a, b, c):
    S = dp1_surface()
    a, b, c = D(a), D(b), D(c)
    assert S.pair(a, b) == S.pair(b, a)
    assert S.pair(a + b, c) == S.pair(a, c) + S.pair(b, c)
    assert S.pair(a * 3, c) == 3 * S.pair(a, c)


def test_arithmetic_genus_examples():
    S = dp1_surface()
    E = minus_one_curves().curves[0]
    assert arithmetic_genus(S, E) == 0
    assert arithmetic_genus(S, -canonical()) == 1
    assert arithmetic_genus(p3_hypersurface(5), D([1])) == 6


def test_cone_membership_examples():
    gens = minus_one_curves().curves
    E1 = D.basis(9, 1)
    assert cone_membership(E1, gens)
    res = cone_decomposition(E1 - D.basis(9, 2), gens)
    assert res.status == "infeasible"
    # the separating functional is non-positive on every generator
    y = res.farkas
    for G in gens:
        assert sum(yi * gi for yi, gi in zip(y, G)) <= 0
    assert cone_membership(D([6]), [D([2])])


vec2 = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(any)


@given(st.lists(vec2, min_size=1, max_size=4), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_cone_membership_matches_oracle(gens, x):
    assert cone_membership(D(x), [D(g) for g in gens]) == cone_oracle_2d(x, gens)


GRAMS = ([[0, 1], [1, 0]], [[1, 0], [0, -1]], [[2, 1], [1, -1]])


@st.composite
def small_surfaces(draw):
    gram = draw(st.sampled_from(GRAMS))
    lat = IntersectionLattice(gram)
    h = D(draw(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda v: lat.pair(D(v), D(v)) > 0)))
    gens = draw(st.lists(vec2.filter(lambda g: lat.pair(h, D(g)) > 0), min_size=1, max_size=3))
    return gram, gens, h


@given(small_surfaces(), st.integers(1, 6))
def test_enumeration_matches_brute_force(surf, bound):
    gram, gens, h = surf
    lat = IntersectionLattice(gram)
    S = SurfaceData("t", lat, D([0, 0]), None, [D(g) for g in gens], h)
    got = enumerate_effective_below(S, h, bound)
    # two generators suffice in the plane, each coefficient below the bound (degrees >= 1)
    R = 4 * bound
    w = [int(lat.pair(h, D.basis(2, i))) for i in range(2)]
    want = []
    for x in itertools.product(range(-R, R + 1), repeat=2):
        dx = w[0] * x[0] + w[1] * x[1]
        if 0 < dx < bound and cone_oracle_2d(x, gens) and span_oracle(x, gens):
            want.append(D(x))
    assert got == sorted(want)


def test_enumeration_rank_one_example():
    S = picard_rank_one(3, 0, a=2)
    H = D([1])
    assert enumerate_effective_below(S, H, 3 * 2 * 3) == [D([2]), D([4])]
    assert enumerate_effective_below(S, H, 0) == []
    assert enumerate_effective_below(S, H, -1) == []


def test_enumeration_dp1_example():
    S = dp1_surface()
    P = dp1_slice(3).h
    N = D([1, -1] + [0] * 7)
    assert S.pair(P, -canonical()) == Fraction(5, 2)
    got = set(enumerate_effective_below(S, P, Fraction(5, 2)))
    assert got == {E for E in minus_one_curves().curves if S.pair(E, N) <= 1}


def test_enumeration_rejects_bad_polarization():
    S = dp1_surface()
    with pytest.raises(PreconditionError):
        enumerate_effective_below(S, D([1, -1] + [0] * 7), 3)


def test_validate_polarization_examples():
    S = dp1_surface()
    assert validate_polarization(p3_hypersurface(5), D([1]))
    assert not validate_polarization(S, D([1, -1] + [0] * 7))
    assert validate_polarization(S, -canonical())


def test_surface_validation():
    lat = IntersectionLattice([[1, 0], [0, -1]])
    with pytest.raises(LatticeError):
        SurfaceData("t", lat, D([0, 0]), None, [D([0, 0])], D([1, 0]))
    with pytest.raises(LatticeError):
        SurfaceData("t", lat, D([0, 0]), None, [D([0, 1])], D([1, 0]))
    with pytest.raises(LatticeError):
        SurfaceData("t", lat, D([0, 0]), None, [D([1, 0])], D([1, 0]), nef_witnesses=[D([-1, 0])])
    with pytest.raises(LatticeError):
        SurfaceData("t", lat, D([0, 0]), None, [D([1, 0])], D([1, 0]), irregularity_zero=False)


def test_effective_needs_integer_span():
    S = picard_rank_one(1, -3, a=2)
    assert S.is_effective(D([4]))
    assert not S.is_effective(D([3]))
    assert not S.is_effective(D([-2]))
