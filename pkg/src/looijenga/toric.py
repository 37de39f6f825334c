"""Smooth complete toric surfaces given by two-dimensional fans."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .lattice import ClassVec, IntLattice, determinant, inverse_unimodular


class FanError(ValueError):
    pass


def det2(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _winding_number(rays) -> int:
    """Full counterclockwise turns made by the closed ray sequence.

    Every consecutive pair has det = +1, so each step turns by an angle in
    (0, pi); we count the steps whose half-open cone (a, b] contains the
    direction (1, 0).
    """
    turns = 0
    n = len(rays)
    for i in range(n):
        a, b = rays[i], rays[(i + 1) % n]
        if a[1] < 0 and (b[1] > 0 or (b[1] == 0 and b[0] > 0)):
            turns += 1
    return turns


@dataclass(frozen=True)
class Fan2D:
    """Cyclically ordered primitive rays, counterclockwise."""

    rays: tuple[tuple[int, int], ...]

    def __post_init__(self):
        rays = tuple((int(x), int(y)) for x, y in self.rays)
        object.__setattr__(self, "rays", rays)
        n = len(rays)
        if n < 3:
            raise FanError("a complete smooth fan needs at least three rays")
        for v in rays:
            if gcd(*v) != 1:
                raise FanError(f"ray {v} is not primitive")
        for i in range(n):
            if det2(rays[i], rays[(i + 1) % n]) != 1:
                raise FanError(f"rays {i} and {(i + 1) % n} do not span a smooth cone")
        if _winding_number(rays) != 1:
            raise FanError("rays wind around the origin more than once")

    @property
    def n(self) -> int:
        return len(self.rays)

    def selfintersections(self) -> tuple[int, ...]:
        """d_i with v_{i-1} + v_{i+1} = -d_i v_i."""
        r, n = self.rays, self.n
        return tuple(det2(r[(i + 1) % n], r[i - 1]) for i in range(n))

    def to_json(self):
        return [list(v) for v in self.rays]

    @classmethod
    def from_json(cls, data) -> "Fan2D":
        return cls(tuple(tuple(v) for v in data))


def selfintersections(fan: Fan2D) -> tuple[int, ...]:
    return fan.selfintersections()


def fan_from_selfintersections(d) -> Fan2D:
    """Fan with the given boundary self-intersection sequence.

    Starts at v_1 = (1, 0), v_2 = (0, 1) and propagates
    v_{i+1} = -d_i v_i - v_{i-1}.
    """
    d = [int(x) for x in d]
    n = len(d)
    if n < 3:
        raise FanError("unrealizable sequence: need at least three components")
    rays = [(1, 0), (0, 1)]
    # d[1] governs the ray after v_2, and so on; d[0] closes the cycle
    for i in range(1, n + 1):
        prev, cur = rays[i - 1], rays[i]
        rays.append((-d[i % n] * cur[0] - prev[0], -d[i % n] * cur[1] - prev[1]))
    if rays[n] != rays[0] or rays[n + 1] != rays[1]:
        raise FanError(f"unrealizable sequence {tuple(d)}: propagation does not close")
    try:
        return Fan2D(tuple(rays[:n]))
    except FanError as exc:
        raise FanError(f"unrealizable sequence {tuple(d)}: {exc}") from None


def corner_blowup(fan: Fan2D, i: int) -> Fan2D:
    """Blow up the node between rays ``i`` and ``i+1`` (0-based, cyclic)."""
    n = fan.n
    if not 0 <= i < n:
        raise IndexError(f"corner index {i} out of range for {n} rays")
    a, b = fan.rays[i], fan.rays[(i + 1) % n]
    new = (a[0] + b[0], a[1] + b[1])
    rays = list(fan.rays)
    rays.insert(i + 1, new)
    return Fan2D(tuple(rays))


def contract_ray(fan: Fan2D, j: int) -> Fan2D:
    """Inverse of :func:`corner_blowup`: remove a ray whose divisor is a (-1)-curve."""
    n = fan.n
    if n <= 3:
        raise FanError("cannot contract a ray of a three-ray fan")
    if fan.selfintersections()[j] != -1:
        raise FanError(f"ray {j} does not carry a (-1)-curve")
    rays = list(fan.rays)
    del rays[j]
    return Fan2D(tuple(rays))


@dataclass(frozen=True)
class ToricPic:
    """Pic of a smooth complete toric surface.

    Basis: the boundary classes of rays 0..n-3.  ``relations`` holds the two
    characters m = e_1^*, e_2^* as vectors (<m, v_i>)_i in Z^n, the image of
    M in the sequence 0 -> M -> Z^n -> Pic -> 0.  ``boundary_classes[i]``
    is the image of the i-th unit vector of Z^n.
    """

    fan: Fan2D
    lattice: IntLattice
    boundary_classes: tuple[ClassVec, ...]
    relations: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def class_of_divisor(self, coeffs) -> ClassVec:
        """Class of sum_i coeffs_i * D_i."""
        r = self.rank
        return tuple(sum(c * b[k] for c, b in zip(coeffs, self.boundary_classes)) for k in range(r))


def toric_pic(fan: Fan2D) -> ToricPic:
    n = fan.n
    d = fan.selfintersections()
    rays = fan.rays
    rel = (tuple(v[0] for v in rays), tuple(v[1] for v in rays))
    # last two divisors in terms of the first n-2 via the two relations
    A = ((rays[n - 2][0], rays[n - 1][0]), (rays[n - 2][1], rays[n - 1][1]))
    if abs(determinant(A)) != 1:
        raise FanError("last two rays do not form a basis")
    Ainv = inverse_unimodular(A)
    # sum_i <m,v_i> D_i = 0  =>  A @ (D_{n-2}, D_{n-1}) = -sum_{i<n-2} v_i D_i
    classes = [tuple(int(i == k) for k in range(n - 2)) for i in range(n - 2)]
    for row in Ainv:
        classes.append(tuple(-(row[0] * rays[k][0] + row[1] * rays[k][1]) for k in range(n - 2)))

    def pairing(i, j):
        if i == j:
            return d[i]
        if (i - j) % n in (1, n - 1):
            return 1
        return 0

    gram = tuple(tuple(pairing(i, j) for j in range(n - 2)) for i in range(n - 2))
    labels = tuple(f"D{i}" for i in range(n - 2))
    lat = IntLattice(gram, labels)
    tp = ToricPic(fan, lat, tuple(classes), rel)
    # self-check: the induced form matches the geometric intersection numbers
    for i in range(n):
        for j in range(n):
            if lat.inner(tp.boundary_classes[i], tp.boundary_classes[j]) != pairing(i, j):
                raise FanError("inconsistent toric intersection form")
    return tp
