import itertools
from fractions import Fraction

from hypothesis import given, strategies as st

from hilbnef import lp


def _solve_square(A, b):
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][-1] / M[i][i] for i in range(n)]


def _independent_rows(A, b):
    """Row-reduce ``[A | b]``; None if inconsistent, else independent rows."""
    M = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(A, b)]
    n = len(A[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    if any(row[-1] != 0 for row in M[r:]):
        return None
    return [row[:-1] for row in M[:r]], [row[-1] for row in M[:r]]


def vertex_oracle(c, A, b):
    """Minimum over basic feasible solutions; None when there is none."""
    red = _independent_rows(A, b)
    if red is None:
        return None
    A, b = red
    m, n = len(A), len(A[0])
    best = None
    for cols in itertools.combinations(range(n), m):
        sub = [[A[i][j] for j in cols] for i in range(m)]
        xs = _solve_square(sub, b)
        if xs is None or any(v < 0 for v in xs):
            continue
        val = sum(Fraction(c[j]) * v for j, v in zip(cols, xs))
        best = val if best is None else min(best, val)
    return best


def test_small_optimum():
    r = lp.solve([1, 1], [[1, 2], [3, 1]], [4, 7])
    assert r.status == "optimal"
    assert r.value == 3
    assert r.x == (2, 1)


def test_infeasible_has_farkas_certificate():
    A, b = [[1, 0], [0, 1]], [1, -1]
    r = lp.feasible(A, b)
    assert r.status == "infeasible"
    y = r.farkas
    for j in range(2):
        assert sum(y[i] * A[i][j] for i in range(2)) <= 0
    assert sum(y[i] * b[i] for i in range(2)) > 0


def test_unbounded():
    assert lp.solve([-1, 0], [[1, -1]], [0]).status == "unbounded"


def test_redundant_rows():
    r = lp.solve([1, 2, 0], [[1, 1, 1], [2, 2, 2]], [3, 6])
    assert r.status == "optimal" and r.value == 0


def test_rational_data():
    r = lp.maximize([1], [[Fraction(3, 2)]], [Fraction(9, 4)])
    assert r.value == Fraction(3, 2)


ints = st.integers(-4, 4)


@st.composite
def bounded_lp(draw):
    m = draw(st.integers(1, 3))
    n = draw(st.integers(1, 4))
    A = [[draw(ints) for _ in range(n)] for _ in range(m)]
    b = [draw(st.integers(-6, 6)) for _ in range(m)]
    c = [draw(ints) for _ in range(n)]
    # box everything: sum x + s = 10 keeps the problem bounded
    A = [row + [0] for row in A] + [[1] * n + [1]]
    return c + [0], A, b + [10]


@given(bounded_lp())
def test_matches_vertex_enumeration(problem):
    c, A, b = problem
    r = lp.solve(c, A, b)
    want = vertex_oracle(c, A, b)
    if want is None:
        assert r.status == "infeasible"
        y = r.farkas
        for j in range(len(A[0])):
            assert sum(y[i] * A[i][j] for i in range(len(A))) <= 0
        assert sum(y[i] * b[i] for i in range(len(A))) > 0
    else:
        assert r.status == "optimal"
        assert r.value == want
        assert all(v >= 0 for v in r.x)
        for row, rhs in zip(A, b):
            assert sum(a * x for a, x in zip(row, r.x)) == rhs
