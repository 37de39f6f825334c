import pytest

from looijenga.corpus import EXAMPLES, cycle7, cycle8, f1_base, p2_axes, ye_p2_axes
from looijenga.gm import GmElem
from looijenga.lattice import LatticeIsometry
from looijenga.pair import BlowupEntry, build_pair
from looijenga.roots import reflection
from looijenga.torelli import (
    TorelliError,
    adm_membership,
    check_global_torelli,
    mw_rank,
    torsor_group,
    weak_torelli,
)
from looijenga.toric import fan_from_selfintersections

ALPHA = (1, -1, -1, -1)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_identity_is_torelli(name):
    p = EXAMPLES[name]()
    v = check_global_torelli(p, p, LatticeIsometry.identity(p.pic))
    assert v.verdict == "yes"
    assert v.torsor == torsor_group(p)


def test_torsor_groups():
    # [DERIVED] Smith invariants of L -> (L.D_i), padded with zeros
    assert torsor_group(p2_axes()) == (1, 1, 1)
    assert torsor_group(cycle7()) == (1,) * 7
    assert torsor_group(cycle8()) == (1,) * 8
    assert torsor_group(f1_base()) == (1, 1, 0, 0)


def test_mw_rank():
    # the eight-cycle has Mordell-Weil rank one, as in the worked example
    assert mw_rank(cycle8()) == 1
    assert mw_rank(cycle7()) == 2
    with pytest.raises(TorelliError):
        mw_rank(p2_axes())


def test_different_periods_fail_condition_four():
    a = p2_axes()
    fan = fan_from_selfintersections((1, 1, 1))
    b = build_pair(fan, [BlowupEntry(i, GmElem.symbol(f"u{i}")) for i in range(3)])
    v = check_global_torelli(a, b, LatticeIsometry.identity(a.pic))
    assert v.verdict == "no" and v.failed_condition == 4


def test_boundary_not_preserved():
    p = p2_axes()
    swap = LatticeIsometry(((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)), p.pic, p.pic)
    v = check_global_torelli(p, p, swap)
    assert v.verdict == "no" and v.failed_condition == 1


def test_reflection_on_generic_pair_fails():
    p = p2_axes()
    s = reflection(p.pic, ALPHA)
    v = check_global_torelli(p, p, s)
    assert v.verdict == "no" and v.failed_condition == 4


def test_weak_torelli_ye():
    p = ye_p2_axes()
    s = reflection(p.pic, ALPHA)
    # s_alpha itself moves the ample cone off the nef cone
    assert check_global_torelli(p, p, s).verdict == "no"
    res = weak_torelli(p, p, s)
    assert res.g.word == (ALPHA,)
    assert res.verdict.verdict == "yes"


def test_adm():
    p = p2_axes()
    assert adm_membership(p, LatticeIsometry.identity(p.pic))
    assert adm_membership(p, reflection(p.pic, ALPHA))
    swap = LatticeIsometry(((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)), p.pic, p.pic)
    assert not adm_membership(p, swap)
    minus = LatticeIsometry(tuple(tuple(-int(i == j) for j in range(4)) for i in range(4)), p.pic, p.pic)
    assert not adm_membership(p, minus)
