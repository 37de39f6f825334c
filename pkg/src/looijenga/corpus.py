"""Built-in example pairs."""

from __future__ import annotations

from .gm import MINUS_ONE, GmElem
from .pair import BlowupEntry, PairModel, build_pair
from .toric import corner_blowup, fan_from_selfintersections

P2 = (1, 1, 1)
F1 = (-1, 0, 1, 0)


def p2_axes() -> PairModel:
    """One general point on each coordinate line of P^2 (symbols t1, t2, t3)."""
    fan = fan_from_selfintersections(P2)
    return build_pair(fan, [BlowupEntry(i, GmElem.symbol(f"t{i + 1}")) for i in range(3)])


def ye_p2_axes() -> PairModel:
    """The same configuration at the special points: period identically 1."""
    fan = fan_from_selfintersections(P2)
    return build_pair(fan, [BlowupEntry(i, MINUS_ONE) for i in range(3)])


def f1_base() -> PairModel:
    return build_pair(fan_from_selfintersections(F1))


def _f1_corners():
    # D1..D4 of F1 are rays 0..3; blow up D1∩D2, D2∩D3, D3∩D4 in turn
    fan = fan_from_selfintersections(F1)
    fan = corner_blowup(fan, 0)
    fan = corner_blowup(fan, 2)
    return corner_blowup(fan, 4)


def _on_minus_one_curves(fan) -> PairModel:
    d = fan.selfintersections()
    return build_pair(fan, [BlowupEntry(i, MINUS_ONE) for i in range(fan.n) if d[i] == -1])


def cycle7() -> PairModel:
    """A cycle of seven (-2)-curves (special position, as for Y_e)."""
    return _on_minus_one_curves(_f1_corners())


def cycle8() -> PairModel:
    """A cycle of eight (-2)-curves with no roots (special position)."""
    # then the node of the strict transform of D4 with the last exceptional curve
    return _on_minus_one_curves(corner_blowup(_f1_corners(), 5))


EXAMPLES = {
    "p2-axes": p2_axes,
    "cycle7": cycle7,
    "cycle8": cycle8,
    "f1-base": f1_base,
    "ye-p2-axes": ye_p2_axes,
}


def example(name: str) -> PairModel:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(sorted(EXAMPLES))}") from None
