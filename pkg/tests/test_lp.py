import random
from fractions import Fraction

import pytest

from looijenga.lp import feasible_point, linprog

scipy_optimize = pytest.importorskip("scipy.optimize")


def test_small_cases():
    # min x + y with x + 2y >= 2, 3x + y >= 3, x, y >= 0
    r = linprog([1, 1], [[-1, -2], [-3, -1]], [-2, -3], nonneg=[True, True])
    assert r.status == "optimal" and r.value == Fraction(7, 5) and r.x == (Fraction(4, 5), Fraction(3, 5))
    assert linprog([0], [[1], [-1]], [-1, -1]).status == "infeasible"
    assert linprog([-1], [[-1]], [0], nonneg=[True]).status == "unbounded"
    r = linprog([0, 0], A_eq=[[1, 1], [1, -1]], b_eq=[3, 1])
    assert r.x == (2, 1)


def test_against_scipy():
    rng = random.Random(71)
    for _ in range(60):
        n, m = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-3, 6) for _ in range(m)]
        c = [rng.randint(-3, 3) for _ in range(n)]
        # keep it bounded with a box
        A += [[int(i == j) for j in range(n)] for i in range(n)]
        A += [[-int(i == j) for j in range(n)] for i in range(n)]
        b += [5] * (2 * n)
        ours = linprog(c, A, b)
        ref = scipy_optimize.linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
        if ref.status == 2:
            assert ours.status == "infeasible"
            assert feasible_point(A, b) is None
            continue
        assert ours.status == "optimal"
        assert abs(float(ours.value) - ref.fun) < 1e-7
        assert all(sum(a * x for a, x in zip(row, ours.x)) <= bi for row, bi in zip(A, b))
