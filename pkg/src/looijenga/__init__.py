"""Exact computations with Looijenga pairs: lattices, cones, roots, periods
and Torelli decisions."""

from .cones import ConeOracle, ample_test, in_positive_cone, tits_membership, zariski_decompose
from .corpus import EXAMPLES, cycle7, cycle8, example, f1_base, p2_axes, ye_p2_axes
from .gm import GmElem, fresh_symbol
from .lattice import (
    IntLattice,
    LatticeIsometry,
    SmithDecomposition,
    enumerate_with_square,
    inner,
    orthogonal_complement,
    smith,
)
from .pair import (
    BlowupEntry,
    ExceptionalConfiguration,
    PairModel,
    build_pair,
    certified_ample,
    defining_configuration,
    interior_euler,
    toric_blowup,
)
from .period import (
    BoundaryMarking,
    PeriodPoint,
    lambda_invariant,
    marked_period,
    mutate,
    psi,
    reconstruct,
    solve_boundary_marking,
    unmarked_period,
)
from .roots import RootDatum, WeylElement, chamber_reduce, delta_Y, find_roots, phi_Y, reflection
from .toric import Fan2D, ToricPic, corner_blowup, fan_from_selfintersections, toric_pic
from .torelli import (
    TorelliVerdict,
    adm_membership,
    check_global_torelli,
    mw_rank,
    torsor_group,
    weak_torelli,
)

__all__ = [name for name in dir() if not name.startswith("_")]
