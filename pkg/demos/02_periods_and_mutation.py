# %% [markdown]
# Period points, reconstruction and mutation.
#
# The marked period point sends a line bundle to its restriction to the
# boundary cycle, compared with the marking points.  Everything is exact:
# coordinates live in the multiplicative group with formal symbols.

# %%
from looijenga import p2_axes
from looijenga.lattice import identity
from looijenga.pair import ExceptionalConfiguration, defining_configuration
from looijenga.period import marked_period, mutate, reconstruct, unmarked_period

p = p2_axes()
phi = marked_period(p)
for label, e in zip(p.pic.labels, identity(p.rank)):
    print(label, phi(e))

# %%
# Restricted to the classes orthogonal to the boundary the marking drops out.
u = unmarked_period(p)
print(u.basis, [str(v) for v in u.values])

# %%
# Rebuild the pair from its period point and the configuration of exceptional curves.
rec = reconstruct(p.fan, defining_configuration(p), phi, p.boundary)
print("same pair:", rec.pair == p)

# %%
# Another toric model: contract the three lines H - E_j - E_k instead.
F = ExceptionalConfiguration((((1, 0, -1, -1),), ((1, -1, 0, -1),), ((1, -1, -1, 0),)))
r = mutate(p, F)
print([str(b.coordinate) for b in r.pair.blowups])
print("lattice map:", r.lattice_map.matrix)

# %%
# Going back through the image of the original configuration returns p exactly.
inv = r.lattice_map.inverse()
back_config = ExceptionalConfiguration(
    tuple(tuple(inv(c) for c in g) for g in defining_configuration(p).groups)
)
back = mutate(r.pair, back_config, r.marking)
print("round trip:", back.pair == p)
