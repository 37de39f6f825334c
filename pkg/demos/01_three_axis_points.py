# %% [markdown]
# P^2 with one point blown up on each coordinate line.
#
# The boundary is the triangle of lines, each now of square 0.  We look at
# the Picard lattice, the roots orthogonal to the boundary and an ample class.

# %%
from looijenga import find_roots, p2_axes, reflection
from looijenga.cones import ConeOracle, ample_test

p = p2_axes()
L = p.pic
print("basis:", L.labels)
print("gram:", L.gram)
print("boundary squares:", p.boundary_squares())
print("K^2 =", L.square(p.canonical))

# %%
# The only roots are +-(H - E1 - E2 - E3).
rd = find_roots(p, 6)
for r in rd.roots:
    print(r, rd.status[r])

# %%
# Reflecting in alpha swaps E_i with alpha + E_i.
alpha = (1, -1, -1, -1)
s = reflection(L, alpha)
for e in ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
    print(e, "->", s(e))

# %%
# Ample classes: 3H - E1 - E2 - E3 passes, H alone fails on an exceptional curve.
o = ConeOracle(p)
print("base class:", o.ample0)
print(ample_test(o, (3, -1, -1, -1)))
print(ample_test(o, (1, 0, 0, 0)))
