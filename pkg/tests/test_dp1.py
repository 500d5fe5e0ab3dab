import itertools
from fractions import Fraction

import pytest

from hilbnef.dp1 import (
    MINUS_ONE_TYPES,
    RANK,
    canonical,
    conic_classes,
    default_nef_ray,
    dp1_slice,
    dp1_surface,
    minus_one_curves,
    minus_one_curves_bruteforce,
    orbit_type_counts,
    verify_dp1_theorems,
)
from hilbnef.errors import PreconditionError
from hilbnef.gieseker import eta
from hilbnef.lattice import DivisorClass as D, validate_polarization


def _squares_and_degrees_oracle():
    """Pure python search of the same box, independent of the kernels."""
    found = set()
    for a in range(0, 7):
        for m in itertools.product(range(-1, 4), repeat=8):
            if 3 * a - sum(m) != 1:
                continue
            if a * a - sum(x * x for x in m) == -1:
                found.add((a,) + tuple(-x for x in m))
    return found


def test_surface_basics():
    S = dp1_surface()
    K = canonical()
    assert S.pair(K, K) == 1
    assert validate_polarization(S, -K)
    assert S.chi_O == 1 and S.rank == RANK


def test_curve_list_invariants():
    lst = minus_one_curves()
    S = dp1_surface()
    K = canonical()
    assert len(lst) == 240
    assert lst.type_counts == (8, 28, 56, 56, 56, 28, 8)
    assert sorted(orbit_type_counts(lst).values()) == sorted(lst.type_counts)
    assert list(lst.curves) == sorted(lst.curves)
    for E in lst:
        assert S.pair(E, E) == -1 and S.pair(E, K) == -1
    curves = set(lst.curves)
    for E in lst:
        for p in ((1, 2), (2, 3), (7, 8)):
            c = list(E.coords)
            c[p[0]], c[p[1]] = c[p[1]], c[p[0]]
            assert D(c) in curves
    assert [a for a, _ in MINUS_ONE_TYPES] == list(range(7))


def test_bruteforce_matches_oracle():
    oracle = _squares_and_degrees_oracle()
    assert len(oracle) == 240
    assert {c.as_ints() for c in minus_one_curves_bruteforce()} == oracle
    assert {c.as_ints() for c in minus_one_curves()} == oracle


def test_conics_are_nef_and_square_zero():
    S = dp1_surface()
    K = canonical()
    conics = conic_classes()
    assert len(conics) == 2160
    assert default_nef_ray() in conics
    for C in conics[::97]:
        assert S.pair(C, C) == 0 and S.pair(C, -K) == 2
        assert all(S.pair(C, E) >= 0 for E in minus_one_curves())


def test_slice_examples():
    sl = dp1_slice(2)
    K = canonical()
    assert sl.h == (-K + default_nef_ray()) / 2
    assert sl.pair(sl.h, -K) == Fraction(3, 2)
    for n in range(2, 11):
        assert eta(dp1_slice(n)) < n
    with pytest.raises(PreconditionError):
        dp1_slice(1)
    with pytest.raises(PreconditionError):
        dp1_slice(3, D([1] + [0] * 8))  # H.(-K) = 3
    with pytest.raises(PreconditionError):
        dp1_slice(3, D([2, 1, -1, -1, -1, -1, 0, 0, 0]))


def test_report_n2_and_n5():
    r = verify_dp1_theorems(2)
    assert r.passed, r.failures()
    assert "n2_extras" in r.checks
    assert default_nef_ray() in r.n2_extras
    r = verify_dp1_theorems(5)
    assert r.passed, r.failures()
    assert r.wall_center == -1 and r.reference_ray
    N = default_nef_ray()
    S = dp1_surface()
    want = {-canonical()} | {E for E in minus_one_curves() if S.pair(E, N) == 0}
    assert set(r.destabilizers) == want


def test_other_nef_ray_is_engine_output():
    N = D([1, 0, -1, 0, 0, 0, 0, 0, 0])
    r = verify_dp1_theorems(3, N)
    assert not r.reference_ray
    assert r.passed, r.failures()
    with pytest.raises(PreconditionError):
        verify_dp1_theorems(1)
