# coding: utf-8

# # Refining a closed polygon
#
# A twelve-vertex star is refined with the ternary mask. Dual schemes do not
# keep the original vertices. At an edge midpoint the limit curve takes the
# value of the local quintic through the neighbouring vertices.

from pathlib import Path

import numpy as np

from dualsubdiv import SchemeSpec, construct, load_samples
from dualsubdiv.engine import refine_polygon
from dualsubdiv.formats import data_path, load_polygon, render_svg

mask = construct(SchemeSpec(3, 6, load_samples(data_path("six_point_samples.json"))))
polygon, closed = load_polygon(data_path("hexagram.json"))
print(polygon.dim, len(polygon.points), closed)


for levels in (1, 2, 3, 4):
    refined = refine_polygon(mask, polygon, levels, "float")
    print(levels, len(refined.points))


# Exact mode keeps rationals; one level is enough to see the structure

exact = refine_polygon(mask, polygon, 1, "exact")
print(exact.points[:3])


pts = np.asarray(refine_polygon(mask, polygon, 4, "float").points, dtype=float)
print("bounding box", pts.min(axis=0), pts.max(axis=0))


out = Path("hexagram.svg")
out.write_text(render_svg(polygon, refine_polygon(mask, polygon, 4, "float"), closed))
print("wrote", out.resolve())
