"""Roots, reflections and Weyl chambers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import ConeOracle, ample_test, generic_oracle, in_positive_cone
from .lattice import (
    ClassVec,
    IntLattice,
    LatticeIsometry,
    enumerate_in_sublattice,
    form_signature,
    identity,
    integer_kernel,
    matmul,
    matvec,
)
from .lp import linprog
from .pair import PairModel


class RootError(ValueError):
    pass


def reflection(L: IntLattice, alpha) -> LatticeIsometry:
    """s_alpha(beta) = beta + <alpha, beta> alpha, for alpha^2 = -2."""
    alpha = tuple(alpha)
    if L.square(alpha) != -2:
        raise RootError(f"reflection needs a class of square -2, got {L.square(alpha)}")
    g = L.dual_functional(alpha)
    n = L.rank
    M = tuple(tuple(int(i == j) + alpha[i] * g[j] for j in range(n)) for i in range(n))
    return LatticeIsometry(M, L, L)


def default_bound(p: PairModel) -> int:
    return 10 * max(1, max(abs(x) for row in p.pic.gram for x in row))


@dataclass(frozen=True)
class WeylElement:
    """Product of reflections; ``word`` is applied left to right to a vector."""

    word: tuple[ClassVec, ...]
    matrix: LatticeIsometry

    @classmethod
    def identity(cls, L: IntLattice) -> "WeylElement":
        return cls((), LatticeIsometry.identity(L))

    def __call__(self, v):
        return matvec(self.matrix.matrix, v)

    def inverse(self) -> "WeylElement":
        return WeylElement(tuple(reversed(self.word)), self.matrix.inverse())

    def word_indices(self, roots: Sequence[ClassVec]) -> list[int]:
        idx = {tuple(r): k for k, r in enumerate(roots)}
        return [idx[w] for w in self.word]

    def to_json(self):
        return {"word": [list(a) for a in self.word], "matrix": [list(r) for r in self.matrix.matrix]}


@dataclass
class RootDatum:
    pair: PairModel
    bound: int
    ample0: ClassVec
    roots: list[ClassVec]
    status: dict  # root -> "certified" | "undetermined"
    complete: bool  # the enumeration is provably all of Phi
    phiY: list[ClassVec] = field(default_factory=list)
    deltaY: list[ClassVec] = field(default_factory=list)
    base: tuple = ()

    @property
    def certified(self) -> list[ClassVec]:
        return [r for r in self.roots if self.status[r] == "certified"]

    @property
    def undetermined(self) -> list[ClassVec]:
        return [r for r in self.roots if self.status[r] != "certified"]

    def to_json(self):
        return {
            "bound": self.bound,
            "complete": self.complete,
            "roots": [{"class": list(r), "status": self.status[r]} for r in self.roots],
            "phi_Y": [list(r) for r in self.phiY],
            "delta_Y": [list(r) for r in self.deltaY],
        }


def _dperp_structure(p: PairModel, basis):
    """Signature of D^perp and, when it is negative semidefinite, whether the
    quotient by its radical has any vector of square -2."""
    L = p.pic
    if not basis:
        return "zero", False
    sub = L.sublattice(basis)
    pos, neg, zero = form_signature(sub.gram)
    if pos:
        return "hyperbolic", True
    if zero == 0:
        return "definite", True
    # quotient by the radical: radical = kernel of the gram
    rad = integer_kernel(sub.gram, len(basis))
    # complete the radical to a basis via Smith, then take the complement rows
    from .lattice import smith, transpose

    sd = smith(rad)  # rows of rad: U rad V = S; V columns give a basis adapted to rad
    V = sd.V
    k = len(rad)
    comp = [tuple(V[i][j] for i in range(len(basis))) for j in range(k, len(basis))]
    if not comp:
        return "semidefinite", False
    q = [[sum(a[i] * sub.gram[i][j] * b[j] for i in range(len(a)) for j in range(len(b))) for b in comp] for a in comp]
    # q is negative definite: enumerate its (-2)-vectors with the majorant -q
    from .lattice import fincke_pohst

    negq = [[-x for x in row] for row in q]
    has = any(
        sum(y[i] * q[i][j] * y[j] for i in range(len(y)) for j in range(len(y))) == -2
        for y in fincke_pohst(negq, 2)
    )
    return "semidefinite", has


def _friedman_certificate(gen: ConeOracle, alpha) -> tuple | None:
    """A class on alpha^perp that is ample on the generic deformation."""
    L = gen.lattice
    H = gen.ample0
    ha = L.inner(H, alpha)
    x0 = tuple(Fraction(h) + Fraction(ha, 2) * a for h, a in zip(H, alpha))

    def proj(b):
        ba = L.inner(b, alpha)
        return tuple(Fraction(t) + Fraction(ba, 2) * a for t, a in zip(b, alpha))

    cands = [x0]
    eps = Fraction(1, 1000)
    for b in identity(L.rank):
        pb = proj(b)
        for sgn in (1, -1):
            cands.append(tuple(x + sgn * eps * y for x, y in zip(x0, pb)))
    for x in cands:
        if not any(x):
            continue
        if ample_test(gen, x):
            return x
    return None


def find_roots(p: PairModel, bound: int | None = None, oracle: ConeOracle | None = None) -> RootDatum:
    """Height-bounded fragment of Phi with the Friedman criterion decided per root."""
    o = oracle or ConeOracle(p)
    bound = default_bound(p) if bound is None else int(bound)
    L = p.pic
    basis = o.dperp
    kind, possible = _dperp_structure(p, basis)
    roots = []
    if possible:
        sub = L.sublattice(basis)
        ell = tuple(L.inner(b, o.ample0) for b in basis)
        for y in enumerate_in_sublattice(sub.gram, ell, L.square(o.ample0), -2, -bound, bound):
            roots.append(tuple(sum(c * b[k] for c, b in zip(y, basis)) for k in range(L.rank)))
    complete = (not possible) or kind == "definite"
    gen = generic_oracle(p)
    status = {}
    for a in roots:
        neg = tuple(-t for t in a)
        if neg in status:
            status[a] = status[neg]
            continue
        status[a] = "certified" if _friedman_certificate(gen, a) is not None else "undetermined"
    rd = RootDatum(p, bound, o.ample0, roots, status, complete)
    rd.phiY = phi_Y(rd)
    rd.base = chamber_base(rd)
    rd.deltaY = delta_Y(rd)
    return rd


def phi_Y(rd: RootDatum, phi=None) -> list[ClassVec]:
    """Roots with trivial period value (uncertified candidates excluded)."""
    if phi is None:
        if rd.pair.is_fresh_generic():
            return []
        from .period import unmarked_period

        phi = unmarked_period(rd.pair)
    return [a for a in rd.certified if phi(a).is_one()]


def chamber_base(rd: RootDatum):
    """The base point, moved off every Phi_Y wall deterministically if needed."""
    L = rd.pair.pic
    base = tuple(Fraction(t) for t in rd.ample0)
    if all(L.inner(base, a) != 0 for a in rd.phiY):
        return base
    eps = Fraction(1, 1000)
    direction = tuple(Fraction(k + 1) for k in range(L.rank))
    for _ in range(60):
        cand = tuple(b + eps * d for b, d in zip(base, direction))
        if all(L.inner(cand, a) != 0 for a in rd.phiY) and L.square(cand) > 0:
            return cand
        eps /= 2
    raise RootError("could not move the base point off the walls")  # pragma: no cover


def delta_Y(rd: RootDatum, phi=None) -> list[ClassVec]:
    """Walls of the Phi_Y chamber containing the base point (exact LP facet test)."""
    L = rd.pair.pic
    phiY = rd.phiY if phi is None else phi_Y(rd, phi)
    base = rd.base or chamber_base(rd)
    pos = [a for a in phiY if L.inner(base, a) > 0]
    walls = []
    for a in pos:
        others = [b for b in pos if b != a]
        A_ub = [[-t for t in L.dual_functional(b)] for b in others]
        b_ub = [-1] * len(others)
        res = linprog([0] * L.rank, A_ub, b_ub, [list(L.dual_functional(a))], [0])
        if res.status == "optimal":
            walls.append(a)
    return walls


def chamber_reduce(rd: RootDatum, x, choose=None) -> tuple[WeylElement, tuple]:
    """Reflect x into the chamber {x.alpha >= 0 for alpha in Delta_Y}.

    ``choose`` picks which violated wall to use (default: the first one), so
    tests can randomise the order.
    """
    L = rd.pair.pic
    o = ConeOracle(rd.pair, rd.ample0, certify=False)
    if not in_positive_cone(o, x):
        raise RootError("chamber reduction needs a class in the positive cone")
    x = tuple(Fraction(t) for t in x)
    word = []
    M = identity(L.rank)
    for _ in range(100000):
        bad = [a for a in rd.deltaY if L.inner(x, a) < 0]
        if not bad:
            break
        a = bad[0] if choose is None else choose(bad)
        s = reflection(L, a)
        x = tuple(matvec(s.matrix, x))
        M = matmul(s.matrix, M)
        word.append(tuple(a))
    else:  # pragma: no cover
        raise RootError("chamber reduction did not terminate")
    return WeylElement(tuple(word), LatticeIsometry(M, L, L)), x


def weyl_word_matrix(L: IntLattice, word) -> LatticeIsometry:
    """Matrix of the element applying the reflections of ``word`` in order."""
    M = identity(L.rank)
    for a in word:
        M = matmul(reflection(L, a).matrix, M)
    return LatticeIsometry(M, L, L)
