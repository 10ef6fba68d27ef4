"""
Cut sets, unmixedness and accessibility
=======================================

Walk through the cut sets of a small block with whiskers and see why it is
unmixed but not accessible.
"""

from beicheck import enumerate_cut_sets, is_accessible, is_unmixed
from beicheck.cli import load_fixture
from beicheck.graph import bits

# a block on 1..7 with whiskers on 1, 2, 3, 5, 7 (leaves 8..12)
g = load_fixture("fig2")
print(g.n, "vertices,", g.num_edges(), "edges")

# every cut set S has c(S) > c(S minus i) for each i in S
fam = enumerate_cut_sets(g)
print(len(fam), "cut sets")
for rec in fam.records[:8]:
    print("  S =", [v + 1 for v in bits(rec.mask)], " components:", rec.components)

# unmixed: c(S) = |S| + 1 on every cut set of a connected graph
print("unmixed:", is_unmixed(g)[0])

# accessible needs every nonempty cut set to shrink to another cut set.
# {3,4,6,7} is stuck: none of its 3-subsets is a cut set.
ok, stuck = is_accessible(g)
print("accessible:", ok, " stuck set:", [v + 1 for v in bits(stuck)])
