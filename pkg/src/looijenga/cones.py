"""Cones in Pic(Y)_R: positive cone, ample/nef membership, Zariski
decomposition and the Tits cone.

Every predicate is exact.  Infinite families of walls are made finite by the
segment argument: if a class v of square s < 0 has its wall v^perp meeting
the segment [H, x] at z (H the base ample class), then v lies in the
negative definite z^perp and

    (v.H)^2 <= (-s) * ((H.z)^2 / z^2 - H^2) <= (-s) * ((H.x)^2 / x^2 - H^2),

the last step because (H.z)^2 / z^2 grows monotonically along the segment.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, isqrt

from .lattice import (
    ClassVec,
    LatticeError,
    clear_denominators,
    determinant,
    dot,
    enumerate_in_sublattice,
    form_signature,
    matvec,
    orthogonal_complement,
    solve_rational,
    transpose,
)
from .lp import linprog
from .pair import PairModel, certified_ample


class ConeError(ValueError):
    pass


@dataclass
class ConeOracle:
    """Cone queries for one pair, relative to a certified ample class."""

    pair: PairModel
    ample0: ClassVec | None = None
    certify: bool = True
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.ample0 is None:
            self.ample0 = certified_ample(self.pair)
        elif self.certify:
            from .pair import safe_ample

            base = ConeOracle(self.pair, safe_ample(self.pair), certify=False)
            if not ample_test(base, self.ample0):
                raise ConeError("supplied base class is not ample")
        self.ample0 = tuple(self.ample0)

    @property
    def lattice(self):
        return self.pair.pic

    @cached_property
    def generic(self) -> bool:
        return self.pair.is_fresh_generic()

    @cached_property
    def dperp(self) -> tuple[ClassVec, ...]:
        return orthogonal_complement(self.pair.pic, self.pair.boundary)

    @cached_property
    def period(self):
        from .period import unmarked_period

        return unmarked_period(self.pair)

    def minus_one_classes(self, c_lo: int, c_hi: int) -> list[ClassVec]:
        """v with v^2 = K.v = -1 and c_lo <= v.ample0 <= c_hi."""
        key = ("-1", c_lo, c_hi)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        L = self.lattice
        K = self.pair.canonical
        vs = [
            v
            for v in enumerate_in_sublattice(
                L.gram, L.dual_functional(self.ample0), L.square(self.ample0), -1, c_lo, c_hi
            )
            if L.inner(K, v) == -1
        ]
        with self._lock:
            self._cache[key] = vs
        return vs

    def boundary_roots(self, c_lo: int, c_hi: int) -> list[ClassVec]:
        """v in D^perp with v^2 = -2 and c_lo <= v.ample0 <= c_hi (ambient coordinates)."""
        key = ("-2", c_lo, c_hi)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        L = self.lattice
        B = self.dperp
        out = []
        if B:
            sub = L.sublattice(B)
            ell = tuple(L.inner(b, self.ample0) for b in B)
            for y in enumerate_in_sublattice(sub.gram, ell, L.square(self.ample0), -2, c_lo, c_hi):
                out.append(tuple(sum(c * b[k] for c, b in zip(y, B)) for k in range(L.rank)))
        with self._lock:
            self._cache[key] = out
        return out

    def effective_roots(self, c_lo: int, c_hi: int) -> list[ClassVec]:
        """Boundary-orthogonal (-2)-classes with trivial period, positive on ample0.

        By the (-2)-effectivity lemma each such class is effective; the
        classes of internal (-2)-curves are among them.
        """
        if self.generic:
            return []
        per = self.period
        return [v for v in self.boundary_roots(max(c_lo, 1), c_hi) if per(v).is_one()]


def _as_integral(x) -> ClassVec:
    if all(isinstance(t, int) for t in x):
        return tuple(x)
    return clear_denominators(x)


def wall_bound(o: ConeOracle, x, s: int) -> int:
    """Largest |v.ample0| of a class of square s whose wall meets [ample0, x]."""
    L = o.lattice
    H = o.ample0
    hx = L.inner(H, x)
    x2 = L.square(x)
    h2 = L.square(H)
    val = Fraction(hx * hx, x2) - h2
    val *= -s
    if val <= 0:
        return 0
    return isqrt(val.numerator // val.denominator)


# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class AmpleResult:
    ok: bool
    certificate: ClassVec | None = None
    reason: str = ""
    bound: int = 0
    required_bound: int = 0

    def __bool__(self):
        return self.ok

    @property
    def complete(self) -> bool:
        return self.bound >= self.required_bound

    def to_json(self):
        return {
            "ample": self.ok,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "reason": self.reason,
            "bound": self.bound,
        }


def in_positive_cone(o: ConeOracle, x) -> bool:
    L = o.lattice
    x = _as_integral(x)
    return L.square(x) > 0 and L.inner(x, o.ample0) > 0


def ample_test(o: ConeOracle, x, bound: int | None = None) -> AmpleResult:
    """Is x in the interior of Nef(Y)?

    Checks x^2 > 0, the component of C+, x.D_i > 0, then every (-1)-class
    and every effective boundary-orthogonal (-2)-class whose wall meets the
    segment from ample0 to x.  ``bound`` overrides the height of the wall
    enumeration (the default is the exact segment bound).
    """
    L = o.lattice
    x = _as_integral(x)
    L.check(x)
    if not any(x):
        return AmpleResult(False, x, "zero class")
    x2 = L.square(x)
    if x2 <= 0:
        return AmpleResult(False, x, f"x^2 = {x2} is not positive")
    if L.inner(x, o.ample0) <= 0:
        return AmpleResult(False, o.ample0, "x lies in the opposite component of the positive cone")
    for i, d in enumerate(o.pair.boundary):
        if L.inner(x, d) <= 0:
            return AmpleResult(False, d, f"x.D_{i} = {L.inner(x, d)}")
    b1 = wall_bound(o, x, -1)
    b2 = wall_bound(o, x, -2)
    B1 = b1 if bound is None else bound
    B2 = b2 if bound is None else bound
    for v in o.minus_one_classes(1, B1):
        if L.inner(x, v) <= 0:
            return AmpleResult(False, v, f"(-1)-class with x.v = {L.inner(x, v)}", B1, b1)
    for v in o.effective_roots(1, B2):
        if L.inner(x, v) <= 0:
            return AmpleResult(False, v, f"effective (-2)-class with x.v = {L.inner(x, v)}", B2, b2)
    return AmpleResult(True, None, "", max(B1, B2), max(b1, b2))


def nef_test(o: ConeOracle, x) -> AmpleResult:
    """x nef (closure of the ample cone), for x of positive square."""
    L = o.lattice
    x = _as_integral(x)
    x2 = L.square(x)
    if x2 <= 0 or L.inner(x, o.ample0) <= 0:
        return AmpleResult(False, x, "only classes of positive square are handled")
    for i, d in enumerate(o.pair.boundary):
        if L.inner(x, d) < 0:
            return AmpleResult(False, d, f"x.D_{i} < 0")
    b1, b2 = wall_bound(o, x, -1), wall_bound(o, x, -2)
    for v in o.minus_one_classes(1, b1):
        if L.inner(x, v) < 0:
            return AmpleResult(False, v, "negative on a (-1)-class", b1, b1)
    for v in o.effective_roots(1, b2):
        if L.inner(x, v) < 0:
            return AmpleResult(False, v, "negative on an effective (-2)-class", b2, b2)
    return AmpleResult(True, None, "", max(b1, b2), max(b1, b2))


# ----------------------------------------------------------------------------
# Zariski decomposition


@dataclass(frozen=True)
class ZariskiDecomposition:
    P: tuple
    N: tuple
    support: tuple[ClassVec, ...]
    coefficients: tuple[Fraction, ...]

    def __iter__(self):
        return iter((self.P, self.N))


def _negative_definite(gram) -> bool:
    pos, neg, zero = form_signature(gram)
    return neg == len(gram)


def _project_off(L, x, support):
    """Coefficients a with (x - sum a_j N_j).N_i = 0 for N_i in support."""
    G = [[L.inner(a, b) for b in support] for a in support]
    rhs = [L.inner(x, s) for s in support]
    a = solve_rational(G, rhs)
    if a is None:
        raise ConeError("singular support in Zariski decomposition")
    return a


def zariski_decompose(o: ConeOracle, x, negatives) -> ZariskiDecomposition:
    """x = P + N with P nef against ``negatives`` and the boundary.

    Iterative support growth: solve P.N_i = 0 on the support, add every
    candidate curve on which P is negative, repeat.
    """
    L = o.lattice
    x = tuple(Fraction(t) for t in x)
    cands = []
    for c in list(negatives) + list(o.pair.boundary):
        c = tuple(c)
        if c not in cands:
            cands.append(c)
    support: list[ClassVec] = []
    for _ in range(len(cands) + 1):
        a = _project_off(L, x, support) if support else ()
        P = tuple(
            xi - sum(aj * s[k] for aj, s in zip(a, support)) for k, xi in enumerate(x)
        )
        bad = [c for c in cands if c not in support and L.inner(P, c) < 0]
        if not bad:
            if any(aj < 0 for aj in a):
                raise ConeError("negative coefficient: x is not effective for these curves")
            if support and not _negative_definite([[L.inner(u, v) for v in support] for u in support]):
                raise ConeError("support is not negative definite")
            N = tuple(xi - pi for xi, pi in zip(x, P))
            return ZariskiDecomposition(P, N, tuple(support), tuple(a))
        support.extend(bad)
        if not _negative_definite([[L.inner(u, v) for v in support] for u in support]):
            raise ConeError("support is not negative definite: bad candidate curves")
    raise ConeError("Zariski decomposition did not converge")  # pragma: no cover


def zariski_by_search(o: ConeOracle, x, negatives) -> list[ZariskiDecomposition]:
    """All decompositions satisfying the defining properties, by trying every support.

    Negative definiteness passes to subsets, so the search only extends
    negative definite supports; Sylvester's criterion then needs one integer
    determinant per step.  Coefficients come from Cramer's rule.
    """
    L = o.lattice
    x = tuple(Fraction(t) for t in x)
    cands = []
    for c in list(negatives) + list(o.pair.boundary):
        if tuple(c) not in cands:
            cands.append(tuple(c))
    m = len(cands)
    # all pairings are computed once; every subset then works on small matrices
    G = [[L.inner(u, v) for v in cands] for u in cands]
    xc = [L.inner(x, c) for c in cands]
    den = 1
    for t in xc:
        den = den * t.denominator // gcd(den, t.denominator)
    rhs = [int(t * den) for t in xc]
    found = []

    def consider(S, det):
        sub = [[G[i][j] for j in S] for i in S]
        a = []
        for col in range(len(S)):
            M = [row[:col] + [rhs[i]] + row[col + 1:] for row, i in zip(sub, S)]
            a.append(Fraction(determinant(M), det * den))
        if any(aj <= 0 for aj in a):
            return
        if any(xc[k] - sum(aj * G[i][k] for aj, i in zip(a, S)) < 0 for k in range(m)):
            return
        support = tuple(cands[i] for i in S)
        P = tuple(xi - sum(aj * s[k] for aj, s in zip(a, support)) for k, xi in enumerate(x))
        N = tuple(xi - pi for xi, pi in zip(x, P))
        found.append(ZariskiDecomposition(P, N, support, tuple(a)))

    def extend(S):
        for j in range((S[-1] + 1) if S else 0, m):
            T = S + (j,)
            det = determinant([[G[a][b] for b in T] for a in T])
            if (det > 0) if len(T) % 2 == 0 else (det < 0):
                consider(T, det)
                extend(T)

    if all(t >= 0 for t in xc):
        found.append(ZariskiDecomposition(x, tuple(Fraction(0) for _ in x), (), ()))
    extend(())
    return found


# ----------------------------------------------------------------------------
# Tits cone


@dataclass(frozen=True)
class TitsAnswer:
    value: str  # "true" | "false" | "unknown"
    bound: int
    certificate: object = None
    reason: str = ""

    def __bool__(self):
        return self.value == "true"

    def to_json(self):
        cert = self.certificate
        if isinstance(cert, tuple):
            cert = [str(c) if isinstance(c, Fraction) else c for c in cert]
        return {"member": self.value, "bound": self.bound, "certificate": cert, "reason": self.reason}


def _boundary_span_type(o: ConeOracle):
    """('positive', None), ('radical', r) or ('definite', None) for span[D_i]."""
    L = o.lattice
    D = o.pair.boundary
    G = [[L.inner(a, b) for b in D] for a in D]
    pos, neg, zero = form_signature(G)
    if pos:
        return "positive", None
    # kernel of G inside the span: combinations c with (sum c_i D_i).D_j = 0
    from .lattice import integer_kernel

    ker = integer_kernel(G, len(D))
    for c in ker:
        r = tuple(sum(ci * d[k] for ci, d in zip(c, D)) for k in range(L.rank))
        if any(r):
            if L.inner(r, o.ample0) < 0:
                r = tuple(-t for t in r)
            return "radical", r
    return "definite", None


def tits_membership(o: ConeOracle, x, bound: int | None = None) -> TitsAnswer:
    """Membership in closure(NE(Y_gen) + span[D_i]) for the generic deformation."""
    gen = o if o.generic else generic_oracle(o.pair)
    L = gen.lattice
    xf = tuple(Fraction(t) for t in x)
    xi = _as_integral(xf) if any(xf) else tuple(0 for _ in xf)
    H = gen.ample0
    B = bound if bound is not None else max(1, L.square(H))
    kind, r = _boundary_span_type(gen)
    if kind == "positive":
        return TitsAnswer("true", B, None, "the boundary span contains a class of positive square")
    if kind == "radical":
        val = L.inner(xi, r)
        if val >= 0:
            return TitsAnswer("true", B, None, "the cone is the half-space r.x >= 0")
        return TitsAnswer("false", B, r, "negative against the isotropic boundary class r")
    # negative definite boundary span
    if not any(xi) or (L.square(xi) >= 0 and L.inner(xi, H) > 0):
        return TitsAnswer("true", B, None, "in the closed positive cone")
    D = list(gen.pair.boundary)
    # P = H - sum c_i D_i with P.D_i = 0.  The inverse of a negative definite
    # Gram with nonnegative off-diagonal entries is entrywise <= 0, so
    # P = H + sum |c_i| D_i is nef; it vanishes on span[D_i] and bounds the cone.
    Dgram = [[L.inner(a, b) for b in D] for a in D]
    c = solve_rational(Dgram, [L.inner(H, d) for d in D])
    Pj = clear_denominators(
        tuple(H[k] - sum(ci * d[k] for ci, d in zip(c, D)) for k in range(L.rank))
    )
    if L.inner(Pj, xi) < 0:
        return TitsAnswer("false", B, Pj, "negative on the nef class H projected to D^perp")
    gens = [H] + gen.minus_one_classes(1, B)
    for s in (0, 1, 2):
        gens += enumerate_in_sublattice(L.gram, L.dual_functional(H), L.square(H), s, 1, B)
    gens = list(dict.fromkeys(tuple(g) for g in gens))
    # x = sum lam_g g + sum mu_i D_i, lam >= 0, mu free
    cols = gens + D
    A_eq = [[c[k] for c in cols] for k in range(L.rank)]
    res = linprog(
        [0] * len(cols),
        A_eq=A_eq,
        b_eq=list(xf),
        nonneg=[True] * len(gens) + [False] * len(D),
    )
    if res.status == "optimal":
        return TitsAnswer("true", B, None, "positive combination of generators")
    # separating functional h: h.D_i = 0, h.g >= 0 on generators, h.x <= -1
    Gx = [L.dual_functional(g) for g in gens]
    A_ub = [[-t for t in row] for row in Gx] + [list(L.dual_functional(xi))]
    b_ub = [0] * len(Gx) + [-1]
    A_eq = [list(L.dual_functional(d)) for d in D]
    sep = linprog([0] * L.rank, A_ub, b_ub, A_eq, [0] * len(D))
    if sep.status != "optimal":
        return TitsAnswer("unknown", B, None, "no separating functional found")
    h = sep.x
    # push h towards the projection of H onto D^perp, then verify h is nef
    for eps in (Fraction(1, 1000), Fraction(1, 100), Fraction(1, 10), Fraction(1, 1000000)):
        hv = tuple(a + eps * b for a, b in zip(h, Pj))
        # h as a class: solve gram * hv_class = functional
        hc = solve_rational(L.gram, hv)
        if hc is None:
            continue
        hc = clear_denominators(hc)
        if L.inner(hc, xi) >= 0:
            continue
        if L.square(hc) > 0 and nef_test(gen, hc).ok:
            return TitsAnswer("false", B, hc, "separated by a nef class orthogonal to the boundary")
    return TitsAnswer("unknown", B, None, f"undecided at bound {B}")


_GENERIC_LOCK = threading.Lock()
_GENERIC: dict = {}


def generic_oracle(p: PairModel) -> ConeOracle:
    """Oracle for a fresh-symbol deformation of p (same lattice and basis)."""
    key = (p.fan, tuple((b.component, b.chain_length) for b in p.blowups))
    with _GENERIC_LOCK:
        if key in _GENERIC:
            return _GENERIC[key]
    g = p.generic_deformation()
    o = ConeOracle(g)
    with _GENERIC_LOCK:
        _GENERIC.setdefault(key, o)
        return _GENERIC[key]
