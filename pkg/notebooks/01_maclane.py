"""
The MacLane pair from five lines
================================

Start from five rational lines with two triple points on L1, chain a
triangle through three double points, and read off the two conjugate
arrangements.
"""

from splitpolygon import catalog, chain, compute_combinatorics, ordered_equiv, split

base = catalog.build("base5")
print(base.arrangement)
print(base.lattice.multiplicity_profile())      # {2: 4, 3: 2}

preset = base.presets["maclane"]
psi = base.plinth("maclane")

cr = chain(base.arrangement, psi, preset.base)
for k, e in enumerate(cr.edges, 1):
    print(f"E{k}:", e)                          # each edge is affine in l
print("delta:", cr.delta)                       # l^2 - l + 1

ct = split(base.arrangement, psi, preset.base)
print(ct.verdict, ct.result_field)
a1, a2 = ct.arrangements
print(a1)
print(a2)

# same ordered lattice, 12 points
c1, c2 = compute_combinatorics(a1), compute_combinatorics(a2)
print(ordered_equiv(c1, c2), c1.multiplicity_profile())
for k in range(len(c1.points)):
    print(c1.label_point(k))

# per-edge singular point counts (observed, required)
for ch in ct.checks:
    print(ch.per_edge_counts)
