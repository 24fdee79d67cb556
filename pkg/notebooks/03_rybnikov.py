"""
Two MacLane triangles: the Rybnikov construction
================================================

A first triangle gives the MacLane field Q[z].  A second plinth, equivalent
to the first inside the seven-line base, has a closure polynomial that
factors over Q[z]; both factors still give genuine polygons.
"""

from splitpolygon import catalog, multi_split, quad_roots

first = catalog.split_preset("base7ryb", "psi1")
print("first delta:", first.delta, first.result_field)

for i in (1, 2):
    ct = catalog.second_split("rybnikov", i)
    r = quad_roots(ct.delta)
    print(f"step {i}: delta {ct.delta} -> {r.kind}", ct.lambdas, ct.verdict)
    print("   checks:", [ch.ok for ch in ct.checks])

reps = []
for i in (1, 2):
    e = catalog.build("rybnikov_step", i)
    reps.append((e.arrangement, e.plinth("psi2")))
mc = multi_split(reps)
print(mc.verdict, "components:", mc.components_claimed)    # 4

# thirteen lines, profile of the final lattice
e = catalog.build("rybnikov", 1, 2)
print(len(e.arrangement), e.lattice.multiplicity_profile())
