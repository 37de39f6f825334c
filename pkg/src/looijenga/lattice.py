"""Integer lattices with symmetric bilinear forms.

Vectors are plain tuples of ints (``ClassVec``) holding coordinates in the
lattice basis; rational vectors are tuples of :class:`fractions.Fraction`.
Matrices are tuples of row tuples.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

ClassVec = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


# ----------------------------------------------------------------------------
# small matrix helpers


def as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A) -> Matrix:
    if not A:
        return ()
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def clear_denominators(v) -> tuple[int, ...]:
    """Positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g > 1:
        w = [x // g for x in w]
    return tuple(w)


def determinant(A) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def row_echelon(A):
    """Reduced row echelon form over Q; returns (rows, pivot_columns)."""
    M = [[Fraction(x) for x in r] for r in A]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(row_echelon(A)[1])


def solve_rational(A, b):
    """Solve A x = b over Q.  Returns one solution or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = row_echelon(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return tuple(x)


def inverse_rational(A):
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise LatticeError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def inverse_unimodular(A) -> Matrix:
    inv = inverse_rational(A)
    out = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise LatticeError("matrix is not unimodular")
        out.append(tuple(int(x) for x in r))
    return tuple(out)


# ----------------------------------------------------------------------------
# Smith and Hermite normal forms


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == diag`` with unimodular ``U``, ``V``."""

    U: Matrix
    V: Matrix
    diag: tuple[int, ...]

    def diagonal_matrix(self, shape):
        m, n = shape
        return tuple(
            tuple(self.diag[i] if i == j and i < len(self.diag) else 0 for j in range(n))
            for i in range(m)
        )


def smith(A) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivoting rule: smallest nonzero absolute value in the remaining block,
    first in row-major order.  The output is therefore deterministic.
    """
    A = [list(map(int, r)) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
    return SmithDecomposition(as_matrix(U), as_matrix(V), tuple(diag))


def invariant_factors(A) -> tuple[int, ...]:
    return smith(A).diag


def hermite_rows(rows) -> tuple[ClassVec, ...]:
    """Row-style Hermite normal form of the row span; zero rows dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    M = [list(map(int, r)) for r in rows if any(r)]
    if not M:
        return ()
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        # gcd-combine rows r.. in column c
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[i0] = M[i0], M[r]
            others = [i for i in range(r + 1, len(M)) if M[i][c]]
            if not others:
                break
            for i in others:
                q = M[i][c] // M[r][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
        if r < len(M) and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return tuple(tuple(row) for row in M[:r] if any(row))


def integer_kernel(M, ncols: int | None = None) -> tuple[ClassVec, ...]:
    """Saturated basis (Hermite-reduced) of {x in Z^n : M x = 0}."""
    if not M:
        if ncols is None:
            raise LatticeError("need ncols for an empty matrix")
        return identity(ncols)
    n = len(M[0])
    sd = smith(M)
    r = sum(1 for d in sd.diag if d)
    Vt = transpose(sd.V)
    return hermite_rows(Vt[r:]) if r < n else ()


# ----------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class IntLattice:
    """Free abelian group with an integral symmetric form given by ``gram``."""

    gram: Matrix
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        g = as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(r) != n for r in g):
            raise LatticeError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        labels = tuple(self.labels) or tuple(f"e{i}" for i in range(n))
        if len(labels) != n:
            raise LatticeError("one label per basis vector")
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def check(self, v) -> None:
        if len(v) != self.rank:
            raise LatticeError(f"vector of length {len(v)} in a rank {self.rank} lattice")

    def inner(self, a, b):
        self.check(a)
        self.check(b)
        return sum(ai * sum(g * bj for g, bj in zip(row, b)) for ai, row in zip(a, self.gram) if ai)

    def square(self, a):
        return self.inner(a, a)

    def dual_functional(self, a) -> tuple:
        """Coefficients ``l`` with ``inner(a, x) == dot(l, x)``."""
        self.check(a)
        return matvec(self.gram, a)

    def basis(self) -> tuple[ClassVec, ...]:
        return identity(self.rank)

    def signature(self) -> tuple[int, int, int]:
        return form_signature(self.gram)

    def is_hyperbolic(self) -> bool:
        pos, neg, zero = self.signature()
        return pos == 1 and zero == 0

    def sublattice(self, basis, labels=()) -> "IntLattice":
        """Lattice spanned by ``basis`` (ambient coordinates) with induced form."""
        G = tuple(tuple(self.inner(a, b) for b in basis) for a in basis)
        return IntLattice(G, tuple(labels))


def inner(L: IntLattice, a, b):
    return L.inner(a, b)


def form_signature(gram) -> tuple[int, int, int]:
    """(positive, negative, zero) counts via exact symmetric elimination.

    Uses congruence moves only: diagonal pivots where possible, and the
    substitution e_i -> e_i + e_j when the remaining diagonal is zero but an
    off-diagonal entry is not.
    """
    M = [[Fraction(x) for x in r] for r in gram]
    n = len(M)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j
            for k in range(n):
                M[i][k] += M[j][k]
            for k in range(n):
                M[k][i] += M[k][j]
            piv = i
        d = M[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        row = M[piv][:]
        for i in active:
            f = row[i] / d
            if f:
                for k in active:
                    M[i][k] -= f * row[k]
    return pos, neg, n - pos - neg


# ----------------------------------------------------------------------------
# isometries


@dataclass(frozen=True)
class LatticeIsometry:
    """Integer matrix acting on coordinate columns: ``image = matrix @ v``."""

    matrix: Matrix
    source: IntLattice
    target: IntLattice

    def __post_init__(self):
        M = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", M)
        if len(M) != self.target.rank or any(len(r) != self.source.rank for r in M):
            raise LatticeError("matrix shape does not match source/target ranks")
        if self.source.rank != self.target.rank:
            raise LatticeError("isometries need equal ranks")
        if abs(determinant(M)) != 1:
            raise LatticeError("matrix is not invertible over Z")
        if matmul(matmul(transpose(M), self.target.gram), M) != self.source.gram:
            raise LatticeError("matrix does not preserve the form")

    @classmethod
    def identity(cls, L: IntLattice) -> "LatticeIsometry":
        return cls(identity(L.rank), L, L)

    def __call__(self, v) -> ClassVec:
        self.source.check(v)
        return matvec(self.matrix, v)

    def __matmul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        """Composition ``self o other``."""
        if other.target.gram != self.source.gram:
            raise LatticeError("cannot compose: lattices differ")
        return LatticeIsometry(matmul(self.matrix, other.matrix), other.source, self.target)

    def inverse(self) -> "LatticeIsometry":
        return LatticeIsometry(inverse_unimodular(self.matrix), self.target, self.source)

    def __eq__(self, other):
        if not isinstance(other, LatticeIsometry):
            return NotImplemented
        return self.matrix == other.matrix and self.source.gram == other.source.gram

    def __hash__(self):
        return hash(self.matrix)


# ----------------------------------------------------------------------------
# complements and enumeration


def orthogonal_complement(L: IntLattice, S: Sequence) -> tuple[ClassVec, ...]:
    """Hermite-reduced basis of {x : <x, s> = 0 for all s in S}."""
    if not S:
        return L.basis()
    M = tuple(L.dual_functional(s) for s in S)
    return integer_kernel(M, L.rank)


def coordinates_in(basis, v):
    """Rational coordinates of ``v`` in the span of ``basis`` (None if outside)."""
    if not basis:
        return () if not any(v) else None
    A = transpose(basis)
    return solve_rational(A, v)


def _ldl(Q):
    """Q = U^T diag(d) U with U unit upper triangular (Q positive definite)."""
    n = len(Q)
    A = [[Fraction(x) for x in r] for r in Q]
    d = [Fraction(0)] * n
    U = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        d[i] = A[i][i] - sum(U[k][i] ** 2 * d[k] for k in range(i))
        if d[i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            U[i][j] = (A[i][j] - sum(U[k][i] * U[k][j] * d[k] for k in range(i))) / d[i]
    return d, U


def lll_reduce(Q, delta=Fraction(3, 4)):
    """LLL-reduce the standard basis w.r.t. a positive definite rational form.

    Returns an integer matrix T (columns = new basis vectors) with
    det T = +-1.  Used only to shrink Fincke-Pohst search trees.
    """
    n = len(Q)
    Q = [[Fraction(x) for x in r] for r in Q]
    T = [[int(i == j) for j in range(n)] for i in range(n)]  # rows = basis vectors

    def gram_of(a, b):
        return sum(a[i] * sum(Q[i][j] * b[j] for j in range(n) if b[j]) for i in range(n) if a[i])

    def gso():
        G = [[gram_of(T[i], T[j]) for j in range(n)] for i in range(n)]
        mu = [[Fraction(0)] * n for _ in range(n)]
        bn = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                mu[i][j] = (G[i][j] - sum(mu[j][k] * mu[i][k] * bn[k] for k in range(j))) / bn[j]
            bn[i] = G[i][i] - sum(mu[i][k] ** 2 * bn[k] for k in range(i))
            if bn[i] <= 0:
                raise LatticeError("form is not positive definite")
        return mu, bn

    k = 1
    mu, bn = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                T[k] = [a - q * b for a, b in zip(T[k], T[j])]
                mu, bn = gso()
        if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            k += 1
        else:
            T[k], T[k - 1] = T[k - 1], T[k]
            mu, bn = gso()
            k = max(k - 1, 1)
    return transpose(T)


def fincke_pohst(Q, bound) -> list[tuple[int, ...]]:
    """All integer x with x^T Q x <= bound for a positive definite rational Q.

    The search runs in an LLL-reduced basis and uses integer arithmetic only:
    every pruning inequality is scaled to a common denominator.
    """
    n = len(Q)
    bound = Fraction(bound)
    if bound < 0:
        return []
    if n == 0:
        return [()]
    T = lll_reduce(Q)
    Qr = matmul(matmul(transpose(T), [[Fraction(x) for x in r] for r in Q]), T)
    d, U = _ldl(Qr)
    # t_i = x_i + sum_{j>i} U_ij x_j;  Q = sum d_i t_i^2.
    # Row i: D_i * U_ij = P_ij integers, centre numerator C_i = -sum P_ij x_j.
    Drow = []
    P = []
    for i in range(n):
        den = 1
        for j in range(i + 1, n):
            den = den * U[i][j].denominator // gcd(den, U[i][j].denominator)
        Drow.append(den)
        P.append([int(U[i][j] * den) if j > i else 0 for j in range(n)])
    # d_i (x_i - c_i)^2 = d_i/D_i^2 (D_i x_i - C_i)^2; scale by S to make K_i integral
    S = bound.denominator
    for i in range(n):
        w = d[i] / (Drow[i] ** 2)
        S = S * w.denominator // gcd(S, w.denominator)
    K = [int(d[i] / (Drow[i] ** 2) * S) for i in range(n)]
    R0 = int(bound * S)
    out = []
    x = [0] * n

    def rec(i, R):
        Di, Ki, Pi = Drow[i], K[i], P[i]
        C = -sum(Pi[j] * x[j] for j in range(i + 1, n) if x[j])
        m = isqrt(R // Ki)
        lo = -((m - C) // Di)  # ceil((C - m)/Di)
        hi = (C + m) // Di
        for xi in range(lo, hi + 1):
            t = Di * xi - C
            used = Ki * t * t
            if used <= R:
                x[i] = xi
                if i == 0:
                    out.append(tuple(x))
                else:
                    rec(i - 1, R - used)
        x[i] = 0

    rec(n - 1, R0)
    return [matvec(T, y) for y in out]


def enumerate_in_sublattice(
    gram, ell, h2, s: int, c_lo: int, c_hi: int
) -> list[tuple[int, ...]]:
    """Vectors y of the lattice with Gram ``gram`` with y^2 = s and
    c_lo <= dot(ell, y) <= c_hi, where ``ell`` is pairing with a class H of
    square ``h2`` > 0 in an ambient form of signature (1, *).

    The positive definite majorant 2(y.H)^2/H^2 - y^2 bounds the search.
    """
    if c_lo > c_hi:
        return []
    if h2 <= 0:
        raise LatticeError("H must have positive square")
    n = len(gram)
    h2 = Fraction(h2)
    Q = [[2 * Fraction(ell[i] * ell[j]) / h2 - gram[i][j] for j in range(n)] for i in range(n)]
    cmax = max(abs(c_lo), abs(c_hi))
    if c_lo <= 0 <= c_hi:
        cmin2 = 0
    else:
        cmin2 = min(c_lo * c_lo, c_hi * c_hi)
    bound = 2 * Fraction(cmax * cmax) / h2 - s
    if bound < 2 * Fraction(cmin2) / h2 - s or bound < 0:
        return []
    out = []
    for y in fincke_pohst(Q, bound):
        c = dot(ell, y)
        if c_lo <= c <= c_hi and sum(
            y[i] * sum(gram[i][j] * y[j] for j in range(n)) for i in range(n)
        ) == s:
            out.append(y)
    out.sort(key=lambda y: (dot(ell, y), y))
    return out


def enumerate_with_square(L: IntLattice, s: int, H, c_lo: int, c_hi: int) -> list[ClassVec]:
    """All v in L with v^2 = s and c_lo <= v.H <= c_hi, sorted by (v.H, v)."""
    h2 = L.square(H)
    if h2 <= 0:
        raise LatticeError("H must have positive square")
    return enumerate_in_sublattice(L.gram, L.dual_functional(H), h2, s, c_lo, c_hi)
