# %% [markdown]
# Torelli decisions on the special pair Y_e.
#
# Y_e blows up the points t_i = -1, which lie on a line, so H - E1 - E2 - E3
# becomes an internal (-2)-curve.  The reflection s_alpha preserves periods
# and the boundary but moves the nef cone; the weak Torelli step finds the
# Weyl element correcting it.

# %%
from looijenga import find_roots, reflection, ye_p2_axes
from looijenga.lattice import LatticeIsometry
from looijenga.torelli import check_global_torelli, torsor_group, weak_torelli

p = ye_p2_axes()
rd = find_roots(p, 6)
print("Phi_Y:", rd.phiY)
print("Delta_Y:", rd.deltaY)

# %%
ident = LatticeIsometry.identity(p.pic)
print(check_global_torelli(p, p, ident))

s = reflection(p.pic, (1, -1, -1, -1))
print(check_global_torelli(p, p, s).reason)

# %%
res = weak_torelli(p, p, s)
print("g =", res.g.word, "verdict:", res.verdict.verdict)
print("isomorphisms form a torsor under a group with invariant factors", torsor_group(p))
