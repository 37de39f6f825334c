"""Exact linear programming over the rationals.

A dense two-phase simplex on :class:`Fraction` tableaux with Bland's rule,
so it always terminates.  Problem sizes here are tiny (tens of variables),
which is why exactness wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T, basis, r, c):
    piv = T[r][c]
    T[r] = [v / piv for v in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            Ti, Tr = T[i], T[r]
            T[i] = [a - f * b for a, b in zip(Ti, Tr)]
    basis[r] = c


def _simplex(T, basis, ncols, allowed):
    """Minimise the objective stored in the last row of T (reduced costs).

    Columns outside ``allowed`` never enter.  Returns False if unbounded.
    """
    m = len(T) - 1
    while True:
        obj = T[m]
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Minimise c.x subject to A_ub x <= b_ub, A_eq x = b_eq.

    Variables are free unless ``nonneg[j]`` is true.
    """
    n = len(c)
    nonneg = list(nonneg) if nonneg is not None else [False] * n
    # column layout: for each variable a plus part and (if free) a minus part
    cols = []
    for j in range(n):
        cols.append((j, 1))
        if not nonneg[j]:
            cols.append((j, -1))
    nv = len(cols)
    rows = []
    rhs = []
    n_slack = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(a[j]) * s for j, s in cols] + [Fraction(int(i == k)) for i in range(n_slack)]
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(a[j]) * s for j, s in cols] + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    ncols = nv + n_slack + m  # artificials last
    T = []
    for i in range(m):
        T.append(rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]])
    basis = [nv + n_slack + i for i in range(m)]
    # phase 1: minimise sum of artificials
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        obj = [o - t for o, t in zip(obj, T[i])]
    for k in range(m):
        obj[nv + n_slack + k] = Fraction(0)
    T.append(obj)
    allowed = [True] * ncols
    _simplex(T, basis, ncols, allowed)
    if T[m][-1] < 0:
        return LPResult("infeasible")
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= nv + n_slack:
            col = next((j for j in range(nv + n_slack) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    allowed = [j < nv + n_slack for j in range(ncols)]
    # phase 2
    cost = [Fraction(c[j]) * s for j, s in cols] + [Fraction(0)] * (n_slack + m)
    obj = cost + [Fraction(0)]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            obj = [o - cb * t for o, t in zip(obj, T[i])]
    T[m] = obj
    if not _simplex(T, basis, ncols, allowed):
        return LPResult("unbounded")
    val = [Fraction(0)] * ncols
    for i in range(m):
        val[basis[i]] = T[i][-1]
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * val[k]
    value = sum(Fraction(cj) * xj for cj, xj in zip(c, x))
    return LPResult("optimal", tuple(x), value)


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n=None, nonneg=None):
    """Some point of the polyhedron, or None."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq, nonneg)
    return res.x if res.status == "optimal" else None
