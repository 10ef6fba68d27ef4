"""
Accessible implies strongly unmixed on small graphs
===================================================

Run through every connected graph on up to 7 vertices and count how many are
unmixed, accessible and strongly unmixed.
"""

from beicheck import generate_connected
from beicheck.cutsets import unmixed_cut_set_scan
from beicheck.properties import StrongUnmixedSolver, stuck_cut_sets

solver = StrongUnmixedSolver()
print(" n  graphs  unmixed  accessible  strongly unmixed")
for n in range(1, 8):
    graphs = unmixed = accessible = strong = 0
    for g in generate_connected(n):
        graphs += 1
        scan = unmixed_cut_set_scan(g)
        if not scan.unmixed:
            continue
        unmixed += 1
        if stuck_cut_sets(scan.family):
            continue
        accessible += 1
        strong += solver.decide(g)
    print(f"{n:2d}  {graphs:6d}  {unmixed:7d}  {accessible:10d}  {strong:16d}")
