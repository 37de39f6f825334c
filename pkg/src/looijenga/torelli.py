"""Torelli decision procedures and related group computations."""

from __future__ import annotations

from dataclasses import dataclass

from .cones import ConeOracle, ample_test, generic_oracle
from .lattice import LatticeIsometry, identity, matmul, rank, smith
from .pair import PairModel
from .period import unmarked_period
from .roots import RootDatum, WeylElement, chamber_reduce, default_bound, find_roots


class TorelliError(ValueError):
    pass


@dataclass(frozen=True)
class TorelliVerdict:
    verdict: str  # "yes" | "no" | "undetermined"
    failed_condition: int | None = None
    witness: object = None
    torsor: tuple[int, ...] | None = None
    reason: str = ""
    bound: int | None = None

    def __bool__(self):
        return self.verdict == "yes"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "failed_condition": self.failed_condition,
            "witness": self.witness,
            "torsor": list(self.torsor) if self.torsor is not None else None,
            "reason": self.reason,
            "bound": self.bound,
        }


def torsor_group(p: PairModel) -> tuple[int, ...]:
    """Invariant factors of N' = coker(Pic -> Z^n, L -> (L.D_i)), padded to n.

    Zeros count the rank of the torus Hom(N', G_m).
    """
    L = p.pic
    M = [[L.inner(e, d) for e in identity(L.rank)] for d in p.boundary]
    diag = list(smith(M).diag)
    return tuple(diag + [0] * (p.n - len(diag)))


def mw_rank(p: PairModel) -> int:
    """rank of <D>^perp / <D_1, ..., D_n> for D = sum D_i with D^2 = 0."""
    L = p.pic
    D = tuple(-k for k in p.canonical)
    if L.square(D) != 0:
        raise TorelliError(f"D^2 = {L.square(D)}; need an anticanonical cycle of square 0")
    return (L.rank - 1) - rank(p.boundary)


def _period_mismatch(p1, p2, mu):
    phi1 = unmarked_period(p1)
    phi2 = unmarked_period(p2)
    for b, v in zip(phi1.basis, phi1.values):
        w = phi2(mu(b))
        if w != v:
            return {"class": list(b), "phi1": v.to_json(), "phi2": w.to_json()}
    return None


def check_global_torelli(
    p1: PairModel, p2: PairModel, mu: LatticeIsometry, bound: int | None = None
) -> TorelliVerdict:
    """Decide whether mu = f^* for an isomorphism of pairs f: Y2 -> Y1 (as lattices + periods)."""
    if p1.rank != p2.rank or mu.matrix and len(mu.matrix) != p2.rank:
        raise TorelliError("lattice ranks differ")
    if p1.n != p2.n or p1.boundary_squares() != p2.boundary_squares():
        return TorelliVerdict("no", 1, {"reason": "boundary data differ"}, reason="different boundary cycles")
    # (1) boundary classes
    for i, (a, b) in enumerate(zip(p1.boundary, p2.boundary)):
        if mu(a) != b:
            return TorelliVerdict("no", 1, {"component": i, "image": list(mu(a))}, reason=f"mu([D_{i}]) != [D_{i}]")
    o1 = ConeOracle(p1)
    o2 = ConeOracle(p2)
    H = mu(o1.ample0)
    # (2) C++ preserved: mu(H1) generically ample on Y2
    r2 = ample_test(generic_oracle(p2), H)
    if not r2:
        return TorelliVerdict(
            "no", 2, {"class": list(r2.certificate) if r2.certificate else None}, reason=r2.reason
        )
    # (3) nef cones: mu(H1) ample on Y2, and Delta sets correspond
    r3 = ample_test(o2, H)
    if not r3:
        return TorelliVerdict(
            "no", 3, {"class": list(r3.certificate) if r3.certificate else None}, reason=r3.reason
        )
    B = bound if bound is not None else max(default_bound(p1), default_bound(p2))
    rd1 = find_roots(p1, B, o1)
    rd2 = find_roots(p2, B, o2)
    img = {tuple(mu(a)) for a in rd1.deltaY}
    if img != set(rd2.deltaY):
        if rd1.undetermined or rd2.undetermined:
            return TorelliVerdict("undetermined", 3, None, reason=f"Delta sets differ at bound {B}", bound=B)
        extra = sorted(img ^ set(rd2.deltaY))
        return TorelliVerdict("no", 3, {"class": list(extra[0])}, reason="mu(Delta_1) != Delta_2", bound=B)
    # (4) periods on D^perp
    mm = _period_mismatch(p1, p2, mu)
    if mm is not None:
        return TorelliVerdict("no", 4, mm, reason="period points differ", bound=B)
    if rd1.undetermined or rd2.undetermined:
        return TorelliVerdict(
            "undetermined", None, None, reason=f"undetermined roots at bound {B}", bound=B
        )
    return TorelliVerdict("yes", None, None, torsor_group(p1), "", B)


@dataclass(frozen=True)
class WeakTorelliResult:
    g: WeylElement | None
    verdict: TorelliVerdict | None
    reason: str = ""

    def to_json(self):
        return {
            "g": self.g.to_json() if self.g is not None else None,
            "verdict": self.verdict.to_json() if self.verdict is not None else None,
            "reason": self.reason,
        }


def weak_torelli(
    p1: PairModel, p2: PairModel, mu: LatticeIsometry, bound: int | None = None
) -> WeakTorelliResult:
    """The unique g in W_{Y1} making mu o g satisfy all Torelli conditions."""
    if p1.n != p2.n or p1.boundary_squares() != p2.boundary_squares():
        return WeakTorelliResult(None, None, "condition (1): different boundary cycles")
    for i, (a, b) in enumerate(zip(p1.boundary, p2.boundary)):
        if mu(a) != b:
            return WeakTorelliResult(None, None, f"condition (1): mu([D_{i}]) != [D_{i}]")
    o1 = ConeOracle(p1)
    o2 = ConeOracle(p2)
    if not ample_test(generic_oracle(p2), mu(o1.ample0)):
        return WeakTorelliResult(None, None, "condition (2): mu does not preserve C++")
    if _period_mismatch(p1, p2, mu) is not None:
        return WeakTorelliResult(None, None, "condition (4): period points differ")
    B = bound if bound is not None else max(default_bound(p1), default_bound(p2))
    rd1 = find_roots(p1, B, o1)
    x = mu.inverse()(o2.ample0)
    w, _ = chamber_reduce(rd1, x)
    g = w.inverse()
    composed = LatticeIsometry(matmul(mu.matrix, g.matrix.matrix), p1.pic, p2.pic)
    verdict = check_global_torelli(p1, p2, composed, B)
    return WeakTorelliResult(g, verdict, "" if verdict else verdict.reason)


def adm_membership(p: PairModel, theta: LatticeIsometry) -> bool:
    """theta fixes every [D_i] and maps a generic ample class to a generic ample class."""
    if theta.source.gram != p.pic.gram or theta.target.gram != p.pic.gram:
        return False
    if any(theta(d) != d for d in p.boundary):
        return False
    gen = generic_oracle(p)
    return bool(ample_test(gen, theta(gen.ample0)))
