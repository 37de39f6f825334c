"""Looijenga pairs presented by a toric model.

A pair is a smooth complete fan together with a list of interior blowups.
Entry ``j`` blows up the point with coordinate ``q_j`` on the open boundary
component ``D_i`` and then ``chain_length - 1`` further points infinitely
near to it along the strict transform of ``D_i``.

Pic basis: the toric basis (pulled back), followed by the total transforms
``e_{j,1}, ..., e_{j,r}`` of the successive blowups of each entry, in entry
order.  These are orthogonal of square -1, and ``e_{j,k}`` is the chain class
``C_{r+1-k}``; in particular ``e_{j,r}`` is the last (-1)-curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .gm import GmElem, fresh_symbol
from .lattice import ClassVec, IntLattice, clear_denominators
from .toric import Fan2D, ToricPic, corner_blowup, toric_pic


class PairError(ValueError):
    pass


@dataclass(frozen=True)
class BlowupEntry:
    component: int
    coordinate: GmElem
    chain_length: int = 1

    def __post_init__(self):
        if self.chain_length < 1:
            raise PairError("chain_length must be at least 1")
        if not isinstance(self.coordinate, GmElem):
            object.__setattr__(self, "coordinate", GmElem.from_rational(self.coordinate))

    def to_json(self):
        return {
            "component": self.component,
            "coordinate": self.coordinate.to_json(),
            "chain_length": self.chain_length,
        }

    @classmethod
    def from_json(cls, data) -> "BlowupEntry":
        return cls(
            int(data["component"]),
            GmElem.from_json(data["coordinate"]),
            int(data.get("chain_length", 1)),
        )


@dataclass(frozen=True)
class ExceptionalConfiguration:
    """Classes grouped by the boundary component they meet."""

    groups: tuple[tuple[ClassVec, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "groups", tuple(tuple(tuple(int(x) for x in c) for c in g) for g in self.groups)
        )

    @property
    def combinatorial_type(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    def entries(self) -> list[tuple[int, ClassVec]]:
        return [(i, c) for i, g in enumerate(self.groups) for c in g]

    @property
    def classes(self) -> list[ClassVec]:
        return [c for g in self.groups for c in g]

    def violations(self, lattice: IntLattice, boundary, canonical) -> list[str]:
        out = []
        if len(self.groups) != len(boundary):
            return [f"expected {len(boundary)} groups, got {len(self.groups)}"]
        ents = self.entries()
        for i, c in ents:
            if len(c) != lattice.rank:
                out.append(f"class {c} has the wrong length")
                continue
            if lattice.square(c) != -1:
                out.append(f"class {c} has square {lattice.square(c)}, not -1")
            if lattice.inner(canonical, c) != -1:
                out.append(f"class {c} has K-degree {lattice.inner(canonical, c)}, not -1")
            degs = [lattice.inner(c, b) for b in boundary]
            want = [int(k == i) for k in range(len(boundary))]
            if degs != want:
                out.append(f"class {c} meets the boundary in degrees {degs}, expected {want}")
        for a in range(len(ents)):
            for b in range(a + 1, len(ents)):
                ca, cb = ents[a][1], ents[b][1]
                if len(ca) == len(cb) == lattice.rank and lattice.inner(ca, cb) != 0:
                    out.append(f"classes {ca} and {cb} are not orthogonal")
        return out

    def to_json(self):
        return [[list(c) for c in g] for g in self.groups]

    @classmethod
    def from_json(cls, data) -> "ExceptionalConfiguration":
        return cls(tuple(tuple(tuple(c) for c in g) for g in data))


@dataclass(frozen=True)
class PairModel:
    fan: Fan2D
    blowups: tuple[BlowupEntry, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "blowups", tuple(self.blowups))
        n = self.fan.n
        seen = {}
        for j, b in enumerate(self.blowups):
            if not 0 <= b.component < n:
                raise PairError(f"blowup {j}: component {b.component} out of range 0..{n - 1}")
            key = (b.component, b.coordinate)
            if key in seen:
                raise PairError(
                    f"blowups {seen[key]} and {j} hit the same point; use chain_length instead"
                )
            seen[key] = j

    # derived data -----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.fan.n

    @cached_property
    def toric(self) -> ToricPic:
        return toric_pic(self.fan)

    @property
    def toric_rank(self) -> int:
        return self.fan.n - 2

    @cached_property
    def chain_offsets(self) -> tuple[int, ...]:
        """Index in the Pic basis of ``e_{j,1}`` for each entry ``j``."""
        out = []
        k = self.toric_rank
        for b in self.blowups:
            out.append(k)
            k += b.chain_length
        return tuple(out)

    @cached_property
    def pic(self) -> IntLattice:
        t = self.toric.lattice
        r = self.toric_rank
        rank = r + sum(b.chain_length for b in self.blowups)
        gram = [[0] * rank for _ in range(rank)]
        for i in range(r):
            for j in range(r):
                gram[i][j] = t.gram[i][j]
        for k in range(r, rank):
            gram[k][k] = -1
        labels = list(t.labels)
        for j, b in enumerate(self.blowups):
            labels += [f"E{j}_{k}" for k in range(1, b.chain_length + 1)]
        return IntLattice(tuple(map(tuple, gram)), tuple(labels))

    @property
    def rank(self) -> int:
        return self.pic.rank

    def pullback(self, toric_class) -> ClassVec:
        return tuple(toric_class) + (0,) * (self.rank - self.toric_rank)

    def exceptional(self, j: int, k: int) -> ClassVec:
        """Total transform e_{j,k} (k = 1..r) of the k-th blowup of entry j."""
        if not 1 <= k <= self.blowups[j].chain_length:
            raise IndexError(k)
        v = [0] * self.rank
        v[self.chain_offsets[j] + k - 1] = 1
        return tuple(v)

    def chain_class(self, j: int, k: int) -> ClassVec:
        """C_k of entry j in the ordering C_1 = E_r, C_r = E_1 + ... + E_r."""
        r = self.blowups[j].chain_length
        return self.exceptional(j, r + 1 - k)

    @cached_property
    def boundary(self) -> tuple[ClassVec, ...]:
        out = []
        for i, tb in enumerate(self.toric.boundary_classes):
            v = list(self.pullback(tb))
            for j, b in enumerate(self.blowups):
                if b.component == i:
                    for k in range(b.chain_length):
                        v[self.chain_offsets[j] + k] -= 1
            out.append(tuple(v))
        return tuple(out)

    @cached_property
    def canonical(self) -> ClassVec:
        return tuple(-sum(b[k] for b in self.boundary) for k in range(self.rank))

    def boundary_squares(self) -> tuple[int, ...]:
        return tuple(self.pic.square(b) for b in self.boundary)

    def blowups_on(self, i: int) -> list[int]:
        return [j for j, b in enumerate(self.blowups) if b.component == i]

    def is_toric(self) -> bool:
        return not self.blowups

    # constructors -----------------------------------------------------------

    def with_blowups(self, blowups) -> "PairModel":
        return PairModel(self.fan, tuple(blowups))

    def generic_deformation(self) -> "PairModel":
        """Same lattice and basis, every blown-up point replaced by a fresh symbol.

        Chains split into separate single blowups at distinct points, so the
        basis order (and hence every class vector) is unchanged.
        """
        out = []
        for b in self.blowups:
            for _ in range(b.chain_length):
                out.append(BlowupEntry(b.component, fresh_symbol()))
        return PairModel(self.fan, tuple(out))

    def is_fresh_generic(self) -> bool:
        """Every entry is a single blowup at a symbol used nowhere else."""
        names = []
        for b in self.blowups:
            if b.chain_length != 1 or b.coordinate.primes or b.coordinate.sign != 1:
                return False
            if len(b.coordinate.symbols) != 1 or b.coordinate.symbols[0][1] != 1:
                return False
            names.append(b.coordinate.symbols[0][0])
        return len(set(names)) == len(names)

    def to_json(self):
        return {"fan": self.fan.to_json(), "blowups": [b.to_json() for b in self.blowups]}

    @classmethod
    def from_json(cls, data) -> "PairModel":
        return cls(Fan2D.from_json(data["fan"]), tuple(BlowupEntry.from_json(b) for b in data.get("blowups", [])))


def build_pair(fan: Fan2D, blowups=()) -> PairModel:
    p = PairModel(fan, tuple(blowups))
    _ = p.pic, p.boundary
    return p


def toric_blowup(p: PairModel, i: int) -> PairModel:
    """Blow up the node D_i ∩ D_{i+1}; blowup entries are re-indexed."""
    fan = corner_blowup(p.fan, i)
    out = []
    for b in p.blowups:
        c = b.component + 1 if b.component > i else b.component
        out.append(BlowupEntry(c, b.coordinate, b.chain_length))
    return PairModel(fan, tuple(out))


def interior_euler(p: PairModel) -> int:
    return 2 + p.rank - p.n


def defining_configuration(p: PairModel) -> ExceptionalConfiguration:
    """The exceptional classes of the toric model: every e_{j,k}, grouped by component.

    Within a component the order is entry order, innermost blowup first.
    """
    groups = [[] for _ in range(p.n)]
    for j, b in enumerate(p.blowups):
        for k in range(1, b.chain_length + 1):
            groups[b.component].append(p.exceptional(j, k))
    return ExceptionalConfiguration(tuple(tuple(g) for g in groups))


# ample classes ------------------------------------------------------------


def toric_ample(tp: ToricPic) -> ClassVec:
    """An integral ample class on the toric surface.

    On a smooth complete toric surface a class is ample iff it is positive on
    every boundary curve, so an exact LP minimising sum a_i subject to
    (sum a_i D_i).D_j >= 1 always succeeds.
    """
    from .lp import linprog

    n = tp.fan.n
    L = tp.lattice
    B = tp.boundary_classes
    M = [[L.inner(B[i], B[j]) for i in range(n)] for j in range(n)]
    res = linprog([1] * n, [[-x for x in row] for row in M], [-1] * n, nonneg=[True] * n)
    if res.status != "optimal":
        raise PairError("no ample class found on the toric surface")
    coeffs = clear_denominators(res.x)
    H = tp.class_of_divisor(coeffs)
    if L.square(H) <= 0 or any(L.inner(H, b) <= 0 for b in B):
        raise PairError("toric ample class failed its check")
    return H


def chain_weights(p: PairModel) -> ClassVec:
    """sum_j sum_k (r_j + 1 - k) e_{j,k}: weight k on the chain class C_k."""
    v = [0] * p.rank
    for j, b in enumerate(p.blowups):
        r = b.chain_length
        for k in range(1, r + 1):
            v[p.chain_offsets[j] + k - 1] = r + 1 - k
    return tuple(v)


def safe_ample(p: PairModel) -> ClassVec:
    """A class that is ample whatever the blown-up points are.

    With H_bar very ample on the toric surface, any curve not contracted by
    the toric model has multiplicity at most H_bar.C_bar at each blown-up
    point, so N = 1 + (sum of chain weights) makes N pi^*H_bar - sum w e
    positive on all such curves; the weights are decreasing along chains,
    which handles the exceptional curves, and the boundary gets
    N H_bar.D_i - (weights on D_i) > 0.
    """
    return ample_candidate(p, 1 + sum(chain_weights(p)))


def ample_candidate(p: PairModel, N: int) -> ClassVec:
    Hbar = toric_ample(p.toric)
    w = chain_weights(p)
    return tuple(N * x for x in Hbar) + tuple(-x for x in w[p.toric_rank:])


def certified_ample(p: PairModel) -> ClassVec:
    """Smallest N >= 1 such that N pi^*H_bar - sum w e passes the ample test.

    The test runs with :func:`safe_ample` as its base point, so the answer is
    certified; N = 1 + sum(w) always succeeds.
    """
    if p.is_toric():
        return toric_ample(p.toric)
    from .cones import ConeOracle, ample_test

    base = ConeOracle(p, ample0=safe_ample(p), certify=False)
    w = chain_weights(p)
    for N in range(1, 2 + sum(w)):
        H = ample_candidate(p, N)
        if ample_test(base, H):
            return H
    raise PairError("could not certify an ample class")  # pragma: no cover
