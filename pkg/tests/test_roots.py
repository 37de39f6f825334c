import random
from fractions import Fraction

import pytest

from looijenga.corpus import cycle7, cycle8, f1_base, p2_axes, ye_p2_axes
from looijenga.lattice import IntLattice, LatticeIsometry, matmul
from looijenga.roots import (
    RootError,
    chamber_reduce,
    find_roots,
    reflection,
    weyl_word_matrix,
)

P2_3 = IntLattice(((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)))
ALPHA = (1, -1, -1, -1)


def test_reflection_example():
    s = reflection(P2_3, ALPHA)
    assert s(ALPHA) == (-1, 1, 1, 1)
    assert s(s((2, 0, 1, -1))) == (2, 0, 1, -1)
    assert s((1, 0, 0, 0)) == (2, -1, -1, -1)


def test_reflection_needs_a_root():
    with pytest.raises(RootError):
        reflection(P2_3, (0, 1, 0, 0))


def test_reflection_is_an_involutive_isometry():
    rng = random.Random(61)
    roots = [v for v in [(0, 1, -1, 0), (0, 0, 1, -1), ALPHA, (1, -1, -1, -1), (2, -1, -1, -2)] if P2_3.square(v) == -2]
    for a in roots:
        s = reflection(P2_3, a)
        assert matmul(s.matrix, s.matrix) == tuple(
            tuple(int(i == j) for j in range(4)) for i in range(4)
        )
        for _ in range(10):
            v = tuple(rng.randint(-4, 4) for _ in range(4))
            w = tuple(rng.randint(-4, 4) for _ in range(4))
            assert P2_3.inner(s(v), s(w)) == P2_3.inner(v, w)


def test_p2_axes_roots():
    rd = find_roots(p2_axes(), 6)
    assert sorted(rd.roots) == sorted([ALPHA, (-1, 1, 1, 1)])
    assert rd.complete
    assert rd.certified == rd.roots
    assert rd.phiY == [] and rd.deltaY == []


def test_ye_roots():
    rd = find_roots(ye_p2_axes(), 6)
    assert sorted(rd.phiY) == sorted([ALPHA, (-1, 1, 1, 1)])
    # the chamber wall through the base point side is the effective line class
    assert rd.deltaY == [ALPHA]


@pytest.mark.parametrize("pair", [cycle7, cycle8, f1_base])
def test_rootless_examples(pair):
    rd = find_roots(pair())
    assert rd.roots == [] and rd.complete


def test_root_document():
    d = find_roots(p2_axes(), 6).to_json()
    assert d["complete"] is True
    assert {tuple(r["class"]) for r in d["roots"]} == {ALPHA, (-1, 1, 1, 1)}
    assert all(r["status"] == "certified" for r in d["roots"])


def test_chamber_reduce_ye():
    rd = find_roots(ye_p2_axes(), 6)
    L = rd.pair.pic
    x = (1, 0, 0, 0)
    w, y = chamber_reduce(rd, x)
    assert all(L.inner(y, a) >= 0 for a in rd.deltaY)
    assert w(x) == y
    assert weyl_word_matrix(L, w.word) == w.matrix
    # already in the chamber: nothing to do
    w0, y0 = chamber_reduce(rd, (4, -1, -1, -1))
    assert w0.word == ()


def test_chamber_reduce_rejects_outside_positive_cone():
    rd = find_roots(ye_p2_axes(), 6)
    with pytest.raises(RootError):
        chamber_reduce(rd, (-1, 0, 0, 0))


def test_weyl_element_inverse():
    rd = find_roots(ye_p2_axes(), 6)
    w, _ = chamber_reduce(rd, (2, -1, -1, -1))
    assert w.word == (ALPHA,)
    inv = w.inverse()
    v = (3, 1, -2, 0)
    assert inv(w(v)) == v
