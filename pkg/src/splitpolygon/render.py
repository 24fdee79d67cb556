"""Affine pictures of real arrangements as SVG.

All combinatorial content of a drawing (which lines pass through which
marked point) comes from the exact lattice; floats are only used for the
coordinates written to the SVG.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .combinat import Arrangement, compute_combinatorics
from .projgeom import meet_lines


class NonRealField(ValueError):
    pass


@dataclass
class DrawnLine:
    label: str
    coeffs: tuple            # a, b, c of a*x + b*y + c = 0 in the affine chart
    style: str = "base"      # base, polygon or infinity


@dataclass
class DrawnPoint:
    lines: tuple             # labels of the lines through the point
    xy: tuple


@dataclass
class Drawing:
    lines: list = field(default_factory=list)
    points: list = field(default_factory=list)
    infinity: str = ""
    size: int = 600

    def incidence(self) -> set:
        """Drawn multiple points as frozensets of line labels."""
        return {frozenset(p.lines) for p in self.points}

    def bounds(self):
        xs = [p.xy[0] for p in self.points] or [0.0]
        ys = [p.xy[1] for p in self.points] or [0.0]
        w = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        m = 0.15 * w
        return min(xs) - m, min(ys) - m, max(xs) + m, max(ys) + m

    def to_svg(self) -> str:
        x0, y0, x1, y1 = self.bounds()
        s = self.size / max(x1 - x0, y1 - y0)

        def tr(x, y):
            return (x - x0) * s, (y1 - y) * s

        w, h = (x1 - x0) * s, (y1 - y0) * s
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
               f'viewBox="0 0 {w:.1f} {h:.1f}">',
               f'<rect x="0" y="0" width="{w:.1f}" height="{h:.1f}" fill="white" '
               f'stroke="gray" stroke-dasharray="6,4"><title>{escape(self.infinity)}</title></rect>']
        for ln in self.lines:
            if ln.style == "infinity":
                continue
            seg = _clip(ln.coeffs, (x0, y0, x1, y1))
            if seg is None:
                continue
            (ax, ay), (bx, by) = tr(*seg[0]), tr(*seg[1])
            colour = "red" if ln.style == "polygon" else "black"
            out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                       f'stroke="{colour}" stroke-width="1.5"><title>{escape(ln.label)}</title></line>')
        for p in self.points:
            cx, cy = tr(*p.xy)
            r = 2 + len(p.lines)
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r}" fill="blue">'
                       f'<title>{escape(",".join(p.lines))}</title></circle>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_svg())


def _clip(coeffs, box):
    a, b, c = coeffs
    x0, y0, x1, y1 = box
    pts = []
    if abs(b) > 1e-12:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                pts.append((x, y))
    if abs(a) > 1e-12:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                pts.append((x, y))
    pts = sorted(set(pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def _inverse(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    adj = ((e * i - f * h, c * h - b * i, b * f - c * e),
           (f * g - d * i, a * i - c * g, c * d - a * f),
           (d * h - e * g, b * g - a * h, a * e - b * d))
    return tuple(tuple(x / det for x in row) for row in adj)


def render_real(a: Arrangement, infinity_line, out=None, polygon=()) -> Drawing:
    """Draw ``a`` in the affine chart where ``infinity_line`` (index or label)
    is the line at infinity.  ``polygon`` lists labels styled as edges.

    When ``out`` is a path the SVG is written there.
    """
    if a.tower.real_embedding() is None:
        raise NonRealField(f"{a.tower!r} has no real embedding")
    k = a.index(infinity_line) if isinstance(infinity_line, str) else int(infinity_line)
    c = compute_combinatorics(a)
    inf = [float(x) for x in a.lines[k].coords]
    # chart: rows of the transform are two coordinate forms plus the infinity line
    rows = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    j = max(range(3), key=lambda t: abs(inf[t]))
    m = [r for t, r in enumerate(rows) if t != j] + [tuple(inf)]
    minv = _inverse(m)
    dr = Drawing(infinity=a.labels[k])
    for idx, (lab, ln) in enumerate(zip(a.labels, a.lines)):
        v = [float(x) for x in ln.coords]
        # lines transform by the inverse transpose
        w = tuple(sum(minv[r][col] * v[r] for r in range(3)) for col in range(3))
        style = "infinity" if idx == k else "polygon" if lab in polygon else "base"
        dr.lines.append(DrawnLine(lab, w, style))
    for pt in c.points:
        if k in pt:
            continue
        p = meet_lines(a.lines[pt[0]], a.lines[pt[1]])
        v = [float(x) for x in p.coords]
        q = [sum(m[r][col] * v[col] for col in range(3)) for r in range(3)]
        dr.points.append(DrawnPoint(tuple(a.labels[i] for i in pt), (q[0] / q[2], q[1] / q[2])))
    if out is not None:
        dr.save(out)
    return dr
