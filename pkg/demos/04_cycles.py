# %% [markdown]
# Cycles of (-2)-curves.
#
# Blowing up F_1 at corners and then at the special point of every
# (-1)-component gives cycles of seven and eight (-2)-curves with D^2 = 0.

# %%
from looijenga import cycle7, cycle8, find_roots
from looijenga.pair import interior_euler
from looijenga.torelli import mw_rank, torsor_group

for name, make in (("cycle7", cycle7), ("cycle8", cycle8)):
    p = make()
    rd = find_roots(p)
    print(name)
    print("  boundary squares:", p.boundary_squares())
    print("  rank", p.rank, "interior Euler", interior_euler(p))
    print("  roots:", len(rd.roots), "complete:", rd.complete)
    print("  Mordell-Weil rank:", mw_rank(p))
    print("  N' invariant factors:", torsor_group(p))
