"""
Counting triangles on the MacLane lattice
=========================================

Every plinth of size 3 on the 8-line MacLane lattice is tried; counts depend
on which symmetries are quotiented out.  The table shape picks out six
classes once reversed polygons are identified.
"""

import time

from splitpolygon import catalog
from splitpolygon.plinth import plinth_counts, table_shape
from splitpolygon.splitpoly import scan_splittings

ml = catalog.build("maclane", 1)
c = ml.lattice

print("all plinths:", plinth_counts(c, 3))

t0 = time.time()
scan = scan_splittings(ml.arrangement, 3, lattice=c)
print("splitting:", scan.counts, f"({time.time() - t0:.1f}s)")   # dihedral: 56

shaped = scan_splittings(ml.arrangement, 3, predicate=table_shape, lattice=c)
print("table shape:", shaped.counts)
for p in shaped.representatives:
    ct = shaped.certificates[p]
    print(p.to_json(c), "delta", ct.delta, "over", ct.result_field)

# the catalog rows for comparison
for k in range(1, 7):
    print(k, ml.plinth(f"table1_{k}").to_json(c))
