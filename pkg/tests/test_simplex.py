import itertools
import random
from fractions import Fraction

from boolebell.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

F = Fraction


def _solve_square(M, rhs):
    n = len(M)
    aug = [list(r) + [v] for r, v in zip(M, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        aug[c] = [v / aug[c][c] for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def brute_force_min(A, b, c):
    """Best objective over all basic feasible solutions (full row rank A)."""
    m, n = len(A), len(A[0])
    best = None
    for cols in itertools.combinations(range(n), m):
        sol = _solve_square([[A[i][j] for j in cols] for i in range(m)], b)
        if sol is None or any(v < 0 for v in sol):
            continue
        value = sum(c[j] * v for j, v in zip(cols, sol))
        best = value if best is None else min(best, value)
    return best


def test_beale_cycling_example_terminates():
    # cycles under the textbook largest-coefficient rule; Bland must finish
    A = [
        [F(1, 4), -8, -1, 9, 1, 0, 0],
        [F(1, 2), -12, F(-1, 2), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    A = [[F(v) for v in row] for row in A]
    b = [F(0), F(0), F(1)]
    c = [F(-3, 4), F(20), F(-1, 2), F(6), 0, 0, 0]
    res = solve_lp(A, b, c)
    assert res.status == OPTIMAL
    assert res.objective == F(-5, 4)


def test_infeasible_returns_farkas():
    # x1 + x2 = 1 and x1 + x2 = 2
    A = [[F(1), F(1)], [F(1), F(1)]]
    b = [F(1), F(2)]
    res = solve_lp(A, b)
    assert res.status == INFEASIBLE
    y = res.farkas
    assert all(sum(y[i] * A[i][j] for i in range(2)) <= 0 for j in range(2))
    assert sum(yi * bi for yi, bi in zip(y, b)) > 0


def test_negative_rhs_rows_are_handled():
    A = [[F(-1), F(1)]]
    b = [F(-2)]
    res = solve_lp(A, b, [F(1), F(1)])
    assert res.status == OPTIMAL and res.x == (2, 0) and res.objective == 2


def test_unbounded():
    res = solve_lp([[F(1), F(-1)]], [F(1)], [F(0), F(-1)])
    assert res.status == UNBOUNDED


def test_duals_satisfy_complementary_slackness():
    A = [[F(1), F(1), F(1)], [F(1), F(2), F(0)]]
    b = [F(4), F(3)]
    c = [F(2), F(3), F(1)]
    res = solve_lp(A, b, c)
    y = res.duals
    assert sum(yi * bi for yi, bi in zip(y, b)) == res.objective
    for j in range(3):
        reduced = c[j] - sum(y[i] * A[i][j] for i in range(2))
        assert reduced >= 0
        if res.x[j]:
            assert reduced == 0


def test_random_lps_match_vertex_enumeration():
    rng = random.Random(7)
    checked = 0
    while checked < 60:
        m, n = 3, 6
        A = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
        A.append([F(1)] * n)  # bounded feasible region
        b = [F(rng.randint(0, 4)) for _ in range(m)] + [F(10)]
        c = [F(rng.randint(-5, 5)) for _ in range(n)]
        expected = brute_force_min(A, b, c)
        res = solve_lp(A, b, c)
        if expected is None:
            assert res.status == INFEASIBLE
            y = res.farkas
            for j in range(n):
                assert sum(y[i] * A[i][j] for i in range(m + 1)) <= 0
            assert sum(yi * bi for yi, bi in zip(y, b)) > 0
        else:
            assert res.status == OPTIMAL
            assert res.objective == expected
            assert all(v >= 0 for v in res.x)
            for i in range(m + 1):
                assert sum(A[i][j] * res.x[j] for j in range(n)) == b[i]
        checked += 1


def test_redundant_rows():
    A = [[F(1), F(1)], [F(2), F(2)]]
    b = [F(1), F(2)]
    res = solve_lp(A, b, [F(1), F(0)])
    assert res.status == OPTIMAL and res.objective == 0 and res.x == (0, 1)


def test_determinism():
    A = [[F(1), F(1), F(1), F(1)]]
    b = [F(1)]
    first = solve_lp(A, b)
    assert all(solve_lp(A, b) == first for _ in range(3))
