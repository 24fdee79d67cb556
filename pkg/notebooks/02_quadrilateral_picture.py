"""
Drawing the two splitting quadrilaterals
========================================

Closure polynomial 2l^2 - 1 has real roots, so both arrangements can be
drawn with L1 sent to infinity.
"""

import os

from splitpolygon import catalog, quad_roots
from splitpolygon.render import render_real

here = os.path.dirname(os.path.abspath(__file__))
out = os.path.join(here, "figures")
os.makedirs(out, exist_ok=True)

ct = catalog.split_preset("base7quad", "quadrilateral")
print("delta:", ct.delta)
print("roots:", quad_roots(ct.delta).roots)      # +-sqrt(2)/2

pictures = []
for i in (1, 2):
    a = catalog.build("quadrilateral", i).arrangement
    d = render_real(a, "L1", polygon=a.labels[7:])
    d.save(os.path.join(out, f"quadrilateral_{i}.svg"))
    pictures.append(d)
    print(i, len(d.lines), "lines,", len(d.points), "marked points")

# combinatorially the pictures agree point for point
print(pictures[0].incidence() == pictures[1].incidence())
