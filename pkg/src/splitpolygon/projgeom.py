"""Points, lines and projective maps of the plane over a FieldTower.

Points and lines are canonicalized on construction by dividing by the first
nonzero coordinate, so projective equality is plain tuple equality.
"""

from __future__ import annotations

from .nfield import FieldElement, FieldTower, QQ, common_tower


class EqualPoints(ValueError):
    pass


class EqualLines(ValueError):
    pass


class DegenerateFrame(ValueError):
    pass


def _as_triple(coords):
    coords = list(coords)
    if len(coords) != 3:
        raise ValueError("projective coordinates need exactly three entries")
    t = common_tower(*coords)
    return tuple(t.coerce(c) for c in coords), t


def canonicalize(coords):
    triple, t = _as_triple(coords)
    for c in triple:
        if c:
            if c == 1:
                return triple, t
            inv = c.inverse()
            return tuple(x * inv for x in triple), t
    raise ValueError("all-zero projective coordinates")


class _Proj:
    __slots__ = ("coords", "tower")

    def __init__(self, coords):
        self.coords, self.tower = canonicalize(coords)

    def lift(self, tower: FieldTower):
        if tower == self.tower:
            return self
        return type(self)(tuple(tower.coerce(c) for c in self.coords))

    def __eq__(self, other):
        return type(other) is type(self) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def to_json(self):
        return [c.to_json() for c in self.coords]


class ProjPoint(_Proj):
    __slots__ = ()

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


class ProjLine(_Proj):
    __slots__ = ()

    def __repr__(self):
        terms = []
        for c, v in zip(self.coords, "xyz"):
            if not c:
                continue
            s = str(c)
            if c.tower.depth and not c.is_rational():
                s = f"({s})"
            terms.append(v if s == "1" else "-" + v if s == "-1" else f"{s}*{v}")
        return (" + ".join(terms)).replace("+ -", "- ") + " = 0"


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def join_points(p: ProjPoint, q: ProjPoint) -> ProjLine:
    c = cross(p.coords, q.coords)
    if not any(c):
        raise EqualPoints(f"{p} and {q} coincide")
    return ProjLine(c)


def meet_lines(l: ProjLine, m: ProjLine) -> ProjPoint:
    c = cross(l.coords, m.coords)
    if not any(c):
        raise EqualLines(f"{l} and {m} coincide")
    return ProjPoint(c)


def incident(p: ProjPoint, l: ProjLine) -> bool:
    return not dot(p.coords, l.coords)


def det3(rows) -> FieldElement:
    a, b, c = (tuple(r.coords) if isinstance(r, _Proj) else tuple(r) for r in rows)
    return dot(a, cross(b, c))


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return not det3((p, q, r))


def concurrent(l: ProjLine, m: ProjLine, n: ProjLine) -> bool:
    return not det3((l, m, n))


def _transpose(m):
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def _matmul(a, b):
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]
                       for j in range(3)) for i in range(3))


def _matvec(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


def _adjugate(m):
    # rows of adj(m) are cross products of columns
    cols = _transpose(m)
    return (cross(cols[1], cols[2]), cross(cols[2], cols[0]), cross(cols[0], cols[1]))


class ProjTransform:
    """Element of PGL3 given by an invertible 3x3 matrix acting on column vectors."""

    __slots__ = ("matrix", "tower")

    def __init__(self, matrix):
        flat = [x for row in matrix for x in row]
        t = common_tower(*flat)
        m = tuple(tuple(t.coerce(x) for x in row) for row in matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("need a 3x3 matrix")
        if not det3(m):
            raise ValueError("singular matrix")
        self.matrix = m
        self.tower = t

    @classmethod
    def identity(cls, tower: FieldTower = QQ):
        return cls([[tower.coerce(int(i == j)) for j in range(3)] for i in range(3)])

    def determinant(self) -> FieldElement:
        return det3(self.matrix)

    def inverse(self) -> ProjTransform:
        return ProjTransform(_adjugate(self.matrix))

    def __matmul__(self, other: ProjTransform) -> ProjTransform:
        return ProjTransform(_matmul(self.matrix, other.matrix))

    def __call__(self, x):
        return apply(self, x)

    def __eq__(self, other):
        if not isinstance(other, ProjTransform):
            return NotImplemented
        a = [x for r in self.matrix for x in r]
        b = [x for r in other.matrix for x in r]
        return _proportional(a, b)

    def __repr__(self):
        return "ProjTransform(" + "; ".join(" ".join(str(x) for x in r) for r in self.matrix) + ")"


def _proportional(a, b):
    k = next(i for i, x in enumerate(a) if x)
    if not b[k]:
        return False
    s = b[k] / a[k]
    return all(x * s == y for x, y in zip(a, b))


def apply(t: ProjTransform, x):
    """Points map by the matrix, lines by its inverse transpose."""
    if isinstance(x, ProjPoint):
        return ProjPoint(_matvec(t.matrix, x.coords))
    if isinstance(x, ProjLine):
        # inverse transpose up to scalar: l' = adj(M)^T l
        return ProjLine(_matvec(_transpose(_adjugate(t.matrix)), x.coords))
    raise TypeError(f"cannot transform {type(x).__name__}")


def _frame_matrix(pts):
    p1, p2, p3, p4 = (p.coords for p in pts)
    m = _transpose((p1, p2, p3))
    d = det3((p1, p2, p3))
    if not d:
        raise DegenerateFrame("first three frame points are collinear")
    scales = _matvec(_adjugate(m), p4)
    if not all(scales):
        raise DegenerateFrame("frame has three collinear points")
    cols = tuple(tuple(c * s for c in p) for p, s in zip((p1, p2, p3), scales))
    return _transpose(cols)


def frame_transform(src, dst) -> ProjTransform:
    """The projective map sending the four points of ``src`` to those of ``dst``."""
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("frames have four points")
    ms = _frame_matrix(src)
    md = _frame_matrix(dst)
    return ProjTransform(_matmul(md, _adjugate(ms)))


def in_general_position(points) -> bool:
    """No three of the given points are collinear."""
    pts = list(points)
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if collinear(pts[i], pts[j], pts[k]):
                    return False
    return True
