"""Exact construction of lattice-equivalent line arrangements by splitting polygons."""

from .nfield import (QQ, FieldElement, FieldTower, UniPoly, adjoin_root, galois_maps, is_square,
                     quad_roots)
from .projgeom import ProjLine, ProjPoint, ProjTransform, apply, join_points, meet_lines
from .combinat import (Arrangement, LineCombinatorics, automorphisms, compute_combinatorics,
                       is_sp_pattern, ordered_equiv, pattern_scan, unordered_equiv)
from .plinth import Plinth, enumerate_plinths, is_plinth, plinth_counts, rigidity_certificate
from .splitpoly import chain, multi_split, scan_splittings, specialize, split, verify_polygon
from .catalog import build
from .render import render_real

__version__ = "0.1.0"
