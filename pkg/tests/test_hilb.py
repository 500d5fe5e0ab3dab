import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from hilbnef.chern import ChernCharacter, Slice, euler_pairing, ideal_sheaf
from hilbnef.dp1 import canonical, dp1_slice, dp1_surface, closed_form_divisor, minus_one_curves
from hilbnef.errors import PreconditionError
from hilbnef.gieseker import eta, gieseker_wall
from hilbnef.hilb import (
    BRILL_NOETHER,
    GENUS_BOUND,
    NOT_CERTIFIED,
    PRESET_SERIES,
    HCFiber,
    HilbDivisorClass,
    MovingPoint,
    Pencil,
    donaldson_image,
    extremality_certificate,
    has_smooth_member,
    intersect,
    nef_divisor_from_wall,
    pencil,
    pic_rank1_nef,
    w_sigma_vector,
)
from hilbnef.lattice import DivisorClass as D, arithmetic_genus
from hilbnef.presets import cyclic_cover, p3_hypersurface, picard_rank_one

from strategies import dp1_slices, p1xp1_slices, rank_one_slices, slices

H = D([1])


@pytest.mark.parametrize("n", [2, 3, 7])
def test_dp1_pencil_pairings(n):
    S = dp1_surface()
    K = canonical()
    base = HilbDivisorClass(-K * (n - 1), -1)
    for E in minus_one_curves().curves[::7]:
        assert intersect(base, pencil(S, E), n, S) == 0
    assert intersect(base, Pencil(-K, 1), n, S) == -1
    assert pencil(S, -K).genus == 1


@pytest.mark.parametrize("d,k,a,chi", [(5, 1, 1, 5), (2, 1, 2, 3), (3, -1, 1, 1), (4, 2, 3, 6)])
def test_rank_one_orthogonal_pencil(d, k, a, chi):
    S = picard_rank_one(d, k, a, chi)
    for n in (1, 5, a * a * d + 2):
        div = HilbDivisorClass(S.canonical / 2 + H * (Fraction(a, 2) + Fraction(n, a * d)), -1)
        assert intersect(div, pencil(S, H * a), n, S) == 0


def test_intersect_basics():
    S = p3_hypersurface(5)
    div = HilbDivisorClass(H * 3, Fraction(-1))
    assert intersect(div, MovingPoint(H * 2), 4, S) == 30
    assert intersect(div, HCFiber(), 4, S) == 1
    assert intersect(HilbDivisorClass(H, 0), HCFiber(), 4, S) == 0
    with pytest.raises(ValueError):
        intersect(div, HCFiber(), 0, S)
    with pytest.raises(TypeError):
        intersect(div, H, 2, S)
    assert (div + div).b_half_coeff == -2 and (2 * div).l_part == H * 6
    assert HilbDivisorClass(H * 4, -2).normalized() == HilbDivisorClass(H * 2, -1)
    with pytest.raises(ValueError):
        HilbDivisorClass(H, 0).normalized()


def test_nef_divisor_examples():
    q = Slice(p3_hypersurface(5), H, -H)
    assert nef_divisor_from_wall(Fraction(-1, 2), q) == HilbDivisorClass(H * 2, -1)
    for n in (2, 3, 6):
        sl = dp1_slice(n)
        assert nef_divisor_from_wall(-1, sl) == closed_form_divisor(n)
    for d, k, a in [(5, 1, 1), (3, 2, 2)]:
        S = picard_rank_one(d, k, a)
        sl = Slice(S, H, D([-a]))
        n = a * a * d + 1
        s = Fraction(a, 2) - Fraction(n, a * d)
        div, _ = pic_rank1_nef(S, n, a)
        assert nef_divisor_from_wall(s, sl) == div


def test_w_sigma_quintic():
    q = Slice(p3_hypersurface(5), H, -H)
    v = ideal_sheaf(5, 1)
    w = w_sigma_vector(Fraction(-1, 2), q, v)
    assert w.rank == -1 and w.c1 == H * -2
    assert euler_pairing(q.surface, v, w) == 0
    assert donaldson_image(w) == nef_divisor_from_wall(Fraction(-1, 2), q)
    with pytest.raises(PreconditionError):
        donaldson_image(ChernCharacter(0, H, 1))


def test_extremality_examples():
    Q = p3_hypersurface(5)
    c = extremality_certificate(Q, H, 4)
    assert c.kind == PRESET_SERIES and c.threshold == 4 and "projection" in c.description
    # g(H) = 6: preset needs n >= 4, Brill-Noether n >= 4, genus bound n >= 7
    assert extremality_certificate(Q, H, 3).kind == NOT_CERTIFIED
    S = picard_rank_one(3, 2, 2)
    g = arithmetic_genus(S, H * 2)
    c = extremality_certificate(S, H * 2, int(g) + 1)
    assert c.kind == GENUS_BOUND and c.certified
    assert extremality_certificate(S, H * 2, 1).kind == NOT_CERTIFIED
    assert not extremality_certificate(S, H * 2, 1).certified
    C = cyclic_cover(2, 6)
    assert extremality_certificate(C, H, 2).kind == PRESET_SERIES
    assert extremality_certificate(C, H, 1).kind == NOT_CERTIFIED


def test_brill_noether_threshold():
    Q = p3_hypersurface(5)
    g = arithmetic_genus(Q, H)
    assert g == 6
    # preset series needs n >= 4, genus bound n >= 7, BN n >= 4
    assert extremality_certificate(Q, H * 2, 9).kind == BRILL_NOETHER
    assert extremality_certificate(Q, H * 2, 8).kind == NOT_CERTIFIED  # g(2H) = 21
    assert has_smooth_member(Q, H * 2) and not has_smooth_member(Q, D([0]))
    S = dp1_surface()
    assert has_smooth_member(S, -canonical())
    assert has_smooth_member(S, minus_one_curves().curves[0])
    assert not has_smooth_member(S, -canonical() * 2)
    assert not has_smooth_member(picard_rank_one(3, 1), H)


def test_pic_rank1_nef_examples():
    div, st_ = pic_rank1_nef(p3_hypersurface(5), 10, 1)
    assert div == HilbDivisorClass(H * 3, -1) and st_ == "NefAndExtremal"
    div, st_ = pic_rank1_nef(cyclic_cover(2, 6), 4, 1)
    assert div == HilbDivisorClass(H * Fraction(5, 2), -1) and st_ == "NefAndExtremal"
    assert pic_rank1_nef(p3_hypersurface(5), 2, 1)[1] == "Unknown"
    assert pic_rank1_nef(p3_hypersurface(5), 3, 1)[1] == "NefOnly"
    assert pic_rank1_nef(p3_hypersurface(5), 4, 1)[1] == "NefAndExtremal"
    # without preset data only the genus bound n >= 7 applies
    assert pic_rank1_nef(picard_rank_one(5, 1), 6, 1)[1] == "NefOnly"
    assert pic_rank1_nef(picard_rank_one(5, 1), 7, 1)[1] == "NefAndExtremal"
    with pytest.raises(PreconditionError):
        pic_rank1_nef(dp1_surface(), 3, 1)
    with pytest.raises(PreconditionError):
        pic_rank1_nef(picard_rank_one(5, 1, 2), 30, 1)


@st.composite
def certified_cases(draw):
    sl = draw(st.one_of(rank_one_slices(), p1xp1_slices(), dp1_slices(max_curves=1)))
    lo = max(1, math.ceil(eta(sl)), math.floor(sl.d_squared / 2) + 1)
    n = draw(st.integers(lo, lo + 8))
    return sl, n


@given(certified_cases())
def test_orthogonality_and_sign_structure(case):
    sl, n = case
    r = gieseker_wall(sl, n)
    assume(r.certified)
    S = sl.surface
    div = nef_divisor_from_wall(r.wall.center, sl)
    assert div.b_half_coeff == -1
    for L in r.destabilizers:
        assert intersect(div, pencil(S, L), n, S) == 0
    for C in S.effective_generators:
        assert S.pair(div.l_part, C) >= 0
    assert intersect(div, HCFiber(), n, S) > 0


@given(slices(), st.integers(1, 25), st.fractions(-5, 5, max_denominator=6))
def test_w_sigma_orthogonal_and_image(sl, n, center):
    S = sl.surface
    assume(S.chi_O is not None)
    v = ideal_sheaf(n, S.rank)
    w = w_sigma_vector(center, sl, v)
    assert w.rank == -1
    assert euler_pairing(S, v, w) == 0
    assert donaldson_image(w) == nef_divisor_from_wall(center, sl)


@given(slices(), st.data())
def test_moving_point_pairing(sl, data):
    S = sl.surface
    L = D([data.draw(st.integers(-4, 4)) for _ in range(S.rank)])
    C = data.draw(st.sampled_from(S.effective_generators))
    b = data.draw(st.fractions(-3, 3, max_denominator=2))
    n = data.draw(st.integers(1, 10))
    assert intersect(HilbDivisorClass(L, b), MovingPoint(C), n, S) == S.pair(L, C)
