"""Periods of Looijenga pairs with values in the multiplicative group.

Coordinate convention on the open boundary component D_i: the node
D_{i-1} ∩ D_i sits at infinity and D_i ∩ D_{i+1} at zero.  For the toric
surface this coordinate is the character whose exponent is the ray v_i
turned by +90 degrees; the special point m_i is then -1.

With this convention the lambda-invariant of a degree-zero divisor
sum mult * (point) is the monomial prod coordinate^mult, and the marked
period of L = T + sum c_k e_k (T pulled back from the toric surface,
e_k the exceptional total transforms) is

    phi(L) = prod_i p_i^(L.D_i) * prod_i (-1)^(-T.D_i) * prod_k q_k^(-c_k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gm import MINUS_ONE, ONE, GmElem, GmObstruction, gm_product
from .lattice import (
    ClassVec,
    IntLattice,
    LatticeError,
    LatticeIsometry,
    coordinates_in,
    identity,
    orthogonal_complement,
    smith,
)
from .pair import BlowupEntry, ExceptionalConfiguration, PairModel, defining_configuration
from .toric import Fan2D, ToricPic, fan_from_selfintersections


class PeriodError(ValueError):
    pass


# ----------------------------------------------------------------------------
# lambda invariant and psi


def lambda_invariant(n: int, divisor: Sequence[tuple[int, GmElem, int]]) -> GmElem:
    """lambda of O_D(sum mult * point) for a divisor of multidegree zero.

    ``divisor`` lists (component, coordinate, multiplicity).
    """
    if n < 3:
        raise PeriodError("unsupported cycle length: the closed form needs n >= 3")
    degree = [0] * n
    out = ONE
    for i, z, m in divisor:
        if not 0 <= i < n:
            raise PeriodError(f"component {i} out of range")
        degree[i] += m
        out = out * (z ** m)
    if any(degree):
        raise PeriodError(f"divisor has nonzero multidegree {degree}")
    return out


def psi(lambdas: Sequence[GmElem], degrees: Sequence[int]) -> GmElem:
    """prod_i lambda_i^(deg_i)."""
    if len(lambdas) != len(degrees):
        raise PeriodError("one degree per component")
    return gm_product(l ** d for l, d in zip(lambdas, degrees))


# ----------------------------------------------------------------------------
# markings and period points


@dataclass(frozen=True)
class BoundaryMarking:
    points: tuple[GmElem, ...]

    @classmethod
    def canonical(cls, n: int) -> "BoundaryMarking":
        """p_i = m_i = -1."""
        return cls((MINUS_ONE,) * n)

    def scaled(self, factors: Sequence[GmElem]) -> "BoundaryMarking":
        """Act by an element of Aut^0(D) = G_m^n."""
        return BoundaryMarking(tuple(p * f for p, f in zip(self.points, factors)))

    def to_json(self):
        return [p.to_json() for p in self.points]

    @classmethod
    def from_json(cls, data) -> "BoundaryMarking":
        return cls(tuple(GmElem.from_json(x) for x in data))


@dataclass(frozen=True)
class PeriodPoint:
    """A homomorphism from the sublattice spanned by ``basis`` into G_m.

    ``basis`` holds ambient coordinates; for the whole lattice it is the
    standard basis.  ``values[k]`` is the value on ``basis[k]``.
    """

    lattice: IntLattice
    basis: tuple[ClassVec, ...]
    values: tuple[GmElem, ...]

    @classmethod
    def on_lattice(cls, lattice: IntLattice, values) -> "PeriodPoint":
        return cls(lattice, identity(lattice.rank), tuple(values))

    @property
    def is_full(self) -> bool:
        return self.basis == identity(self.lattice.rank)

    def coordinates(self, v) -> tuple[int, ...]:
        if self.is_full:
            return tuple(v)
        c = coordinates_in(self.basis, v)
        if c is None or any(Fraction(x).denominator != 1 for x in c):
            raise PeriodError(f"class {tuple(v)} is outside the domain of the period point")
        return tuple(int(x) for x in c)

    def __call__(self, v) -> GmElem:
        return gm_product(val ** c for val, c in zip(self.values, self.coordinates(v)) if c)

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)

    def pullback(self, mu: LatticeIsometry) -> "PeriodPoint":
        """phi o mu, as a period point on mu's source (full lattice)."""
        src = mu.source
        return PeriodPoint.on_lattice(src, tuple(self(mu(e)) for e in identity(src.rank)))

    def restrict(self, basis) -> "PeriodPoint":
        basis = tuple(tuple(b) for b in basis)
        return PeriodPoint(self.lattice, basis, tuple(self(b) for b in basis))

    def __eq__(self, other):
        if not isinstance(other, PeriodPoint):
            return NotImplemented
        if self.lattice.gram != other.lattice.gram:
            return False
        return all(self(b) == other(b) for b in self.basis) and all(
            self(b) == other(b) for b in other.basis
        )

    def __hash__(self):
        return hash(self.values)

    def to_json(self):
        if self.is_full:
            labels = self.lattice.labels
        else:
            labels = tuple(f"b{k}" for k in range(len(self.basis)))
        out = {"values": {lab: v.to_json() for lab, v in zip(labels, self.values)}}
        if not self.is_full:
            out["basis"] = [list(b) for b in self.basis]
        return out

    @classmethod
    def from_json(cls, data, lattice: IntLattice) -> "PeriodPoint":
        vals = data["values"] if "values" in data else data
        if "basis" in data:
            basis = tuple(tuple(b) for b in data["basis"])
            labels = tuple(f"b{k}" for k in range(len(basis)))
        else:
            basis = identity(lattice.rank)
            labels = lattice.labels
        missing = [lab for lab in labels if lab not in vals]
        if missing:
            raise PeriodError(f"period point misses values for {missing}")
        return cls(lattice, basis, tuple(GmElem.from_json(vals[lab]) for lab in labels))


def _own_period(p: PairModel, marking: BoundaryMarking, v) -> GmElem:
    """The marked period of a class of p.pic given in p's own basis."""
    if p.n < 3:
        raise PeriodError("unsupported cycle length: the closed form needs n >= 3")
    L = p.pic
    tr = p.toric_rank
    T = tuple(v[:tr])
    tp = p.toric
    out = ONE
    for i, b in enumerate(p.boundary):
        deg = L.inner(v, b)
        if deg:
            out = out * marking.points[i] ** deg
        tdeg = tp.lattice.inner(T, tp.boundary_classes[i])
        if tdeg % 2:
            out = out * MINUS_ONE
    for j, e in enumerate(p.blowups):
        c = sum(v[p.chain_offsets[j] + k] for k in range(e.chain_length))
        if c:
            out = out * e.coordinate ** (-c)
    return out


def marked_period(
    p: PairModel, marking: BoundaryMarking | None = None, mu: LatticeIsometry | None = None
) -> PeriodPoint:
    """phi(L) = (mu(L)|_D)^(-1) ⊗ O_D(sum (L.D_i) p_i) on the source of ``mu``."""
    marking = marking or BoundaryMarking.canonical(p.n)
    if len(marking.points) != p.n:
        raise PeriodError("marking needs one point per boundary component")
    if mu is None:
        src = p.pic
        images = identity(p.rank)
    else:
        if mu.target.gram != p.pic.gram:
            raise PeriodError("marking map does not land in the pair's lattice")
        src = mu.source
        images = tuple(mu(e) for e in identity(src.rank))
        # boundary preservation is only checkable when the source carries
        # the same basis; callers pass reference boundaries explicitly otherwise
    return PeriodPoint.on_lattice(src, tuple(_own_period(p, marking, w) for w in images))


def check_boundary_preserving(mu: LatticeIsometry, src_boundary, dst_boundary) -> None:
    for a, b in zip(src_boundary, dst_boundary):
        if mu(a) != tuple(b):
            raise PeriodError("marking map does not send [D_i] to [D_i]")


def boundary_complement(p: PairModel) -> tuple[ClassVec, ...]:
    return orthogonal_complement(p.pic, p.boundary)


def unmarked_period(p: PairModel) -> PeriodPoint:
    """The period point on D^perp (independent of the boundary marking)."""
    basis = boundary_complement(p)
    phi = marked_period(p)
    return phi.restrict(basis)


# ----------------------------------------------------------------------------
# solving for markings


def solve_boundary_marking(tp: ToricPic, phibar: PeriodPoint) -> BoundaryMarking:
    """Points p_i with marked_period(toric pair, p) = phibar.

    On the toric surface phi(L) = prod_i (-p_i)^(L.D_i).  Writing
    x_i = -p_i, the system prod_i x_i^(A_ji) = phibar(b_j) with
    A_ji = b_j.D_i is diagonalised by Smith: U A V = S.  Then y = V^-1 x
    satisfies y_k^(s_k) = prod_j phibar(b_j)^(U_kj); we take the principal
    root and y_k = 1 on free directions.  Solutions differ by characters
    s^(<m, v_i>) of the two-dimensional torus.
    """
    n = tp.fan.n
    r = tp.rank
    L = tp.lattice
    A = [[L.inner(e, tp.boundary_classes[i]) for i in range(n)] for e in identity(r)]
    b = [phibar(e) for e in identity(r)]
    sd = smith(A)
    y = []
    for k in range(n):
        s = sd.diag[k] if k < len(sd.diag) else 0
        if s == 0:
            y.append(ONE)
            continue
        rhs = gm_product(b[j] ** sd.U[k][j] for j in range(r) if sd.U[k][j])
        try:
            y.append(rhs ** Fraction(1, s))
        except GmObstruction as exc:
            raise PeriodError(f"marking obstruction: {exc}") from None
    x = [gm_product(y[k] ** sd.V[i][k] for k in range(n) if sd.V[i][k]) for i in range(n)]
    return BoundaryMarking(tuple(MINUS_ONE * xi for xi in x))


def torus_character(fan: Fan2D, s1: GmElem, s2: GmElem) -> tuple[GmElem, ...]:
    """The element (s^(<m, v_i>))_i of G_m^n: the kernel of psi on Pic."""
    return tuple((s1 ** v[0]) * (s2 ** v[1]) for v in fan.rays)


# ----------------------------------------------------------------------------
# reconstruction and mutation


@dataclass(frozen=True)
class Reconstruction:
    pair: PairModel
    marking: BoundaryMarking
    lattice_map: LatticeIsometry  # new pair's Pic -> reference lattice


def reconstruct(
    fan: Fan2D,
    config: ExceptionalConfiguration,
    phi: PeriodPoint,
    boundary: Sequence[ClassVec],
) -> Reconstruction:
    """Rebuild the pair whose toric model contracts ``config``.

    ``phi`` is a marked period point on a reference lattice containing the
    configuration classes and the boundary classes ``boundary``.  The new
    pair's toric basis maps to [D_j] + (config classes on j) and its
    exceptional basis to the configuration classes.  Coincident points on a
    component become chains, in input order.
    """
    Lam = phi.lattice
    n = fan.n
    if len(boundary) != n or len(config.groups) != n:
        raise PeriodError("fan, boundary and configuration disagree on n")
    canonical = tuple(-sum(b[k] for b in boundary) for k in range(Lam.rank))
    bad = config.violations(Lam, boundary, canonical)
    if bad:
        raise PeriodError("invalid exceptional configuration: " + "; ".join(bad))
    d = fan.selfintersections()
    for i in range(n):
        want = Lam.square(boundary[i]) + len(config.groups[i])
        if d[i] != want:
            raise PeriodError(
                f"fan has D_{i}^2 = {d[i]} but the configuration needs {want}"
            )
    pulled = []
    for i in range(n):
        v = list(boundary[i])
        for c in config.groups[i]:
            v = [a + x for a, x in zip(v, c)]
        pulled.append(tuple(v))
    from .toric import toric_pic

    tp = toric_pic(fan)
    # toric basis j maps to pulled[j]
    phibar = PeriodPoint.on_lattice(tp.lattice, tuple(phi(pulled[j]) for j in range(n - 2)))
    marking = solve_boundary_marking(tp, phibar)
    # group coincident points into chains
    entries: list[tuple[int, GmElem, list[ClassVec]]] = []
    for i, c in config.entries():
        q = marking.points[i] / phi(c)
        for ent in entries:
            if ent[0] == i and ent[1] == q:
                ent[2].append(c)
                break
        else:
            entries.append((i, q, [c]))
    pair = PairModel(fan, tuple(BlowupEntry(i, q, len(cs)) for i, q, cs in entries))
    cols = [pulled[j] for j in range(n - 2)] + [c for _, _, cs in entries for c in cs]
    M = tuple(tuple(col[r] for col in cols) for r in range(Lam.rank))
    try:
        iota = LatticeIsometry(M, pair.pic, Lam)
    except LatticeError as exc:
        raise PeriodError(f"configuration does not give a toric model: {exc}") from None
    return Reconstruction(pair, marking, iota)


def mutate(
    p: PairModel,
    new_config: ExceptionalConfiguration,
    marking: BoundaryMarking | None = None,
    fan: Fan2D | None = None,
) -> Reconstruction:
    """Present ``p`` through the toric model contracting ``new_config``.

    The returned lattice map goes from the new pair's Pic to ``p.pic`` and
    intertwines the marked periods.
    """
    marking = marking or BoundaryMarking.canonical(p.n)
    bad = new_config.violations(p.pic, p.boundary, p.canonical)
    if bad:
        raise PeriodError("invalid exceptional configuration: " + "; ".join(bad))
    if fan is None:
        squares = p.boundary_squares()
        d = [squares[i] + len(new_config.groups[i]) for i in range(p.n)]
        if list(p.fan.selfintersections()) == d:
            fan = p.fan
        else:
            fan = fan_from_selfintersections(d)
    phi = marked_period(p, marking)
    return reconstruct(fan, new_config, phi, p.boundary)


def identity_configuration(p: PairModel) -> ExceptionalConfiguration:
    return defining_configuration(p)
