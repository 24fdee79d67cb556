"""Intersection lattices of line arrangements and their symmetries.

A lattice records, for each singular point, the set of (0-based) line indices
through it.  Points are sorted tuples, ordered lexicographically, so point
indices are deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .nfield import FieldTower, common_tower
from .projgeom import ProjLine, ProjPoint, meet_lines


class SizeMismatch(ValueError):
    pass


class InvalidCombinatorics(ValueError):
    pass


class Arrangement:
    """An ordered list of pairwise distinct projective lines over one tower."""

    def __init__(self, lines, labels=None, tower: FieldTower | None = None):
        lines = [l if isinstance(l, ProjLine) else ProjLine(l) for l in lines]
        if tower is None:
            tower = common_tower(*(c for l in lines for c in l.coords))
        self.tower = tower
        self.lines = tuple(l.lift(tower) for l in lines)
        if labels is None:
            labels = [f"L{i + 1}" for i in range(len(lines))]
        if len(labels) != len(lines):
            raise ValueError("one label per line")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        self.labels = tuple(labels)
        if len(set(self.lines)) != len(self.lines):
            raise ValueError("arrangement lines must be pairwise distinct")

    def __len__(self):
        return len(self.lines)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def lift(self, tower: FieldTower) -> Arrangement:
        return Arrangement(self.lines, self.labels, tower)

    def extend(self, lines, labels) -> Arrangement:
        t = common_tower(self.tower.zero, *(c for l in lines for c in l.coords))
        return Arrangement(list(self.lines) + list(lines), list(self.labels) + list(labels), t)

    def sub(self, indices) -> Arrangement:
        return Arrangement([self.lines[i] for i in indices], [self.labels[i] for i in indices], self.tower)

    def reorder(self, order) -> Arrangement:
        return self.sub(order)

    def map_lines(self, f) -> Arrangement:
        return Arrangement([f(l) for l in self.lines], self.labels)

    def __eq__(self, other):
        return (isinstance(other, Arrangement) and self.labels == other.labels
                and self.lines == other.lines)

    def __repr__(self):
        body = ", ".join(f"{lab}: {l}" for lab, l in zip(self.labels, self.lines))
        return f"Arrangement[{self.tower!r}]({body})"


@dataclass(frozen=True)
class LineCombinatorics:
    line_labels: tuple
    points: tuple
    _pair: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pts = tuple(sorted(tuple(sorted(p)) for p in self.points))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "line_labels", tuple(self.line_labels))
        n = len(self.line_labels)
        pair = {}
        if len(set(pts)) != len(pts):
            raise InvalidCombinatorics("duplicate points")
        for k, p in enumerate(pts):
            if len(p) < 2:
                raise InvalidCombinatorics(f"point {p} has fewer than two lines")
            if p[0] < 0 or p[-1] >= n:
                raise InvalidCombinatorics(f"point {p} references a missing line")
            for a, b in combinations(p, 2):
                if (a, b) in pair:
                    raise InvalidCombinatorics(f"lines {a},{b} meet in two points")
                pair[(a, b)] = k
        if len(pair) != comb(n, 2):
            raise InvalidCombinatorics("some pair of lines has no common point")
        object.__setattr__(self, "_pair", pair)

    @property
    def n(self) -> int:
        return len(self.line_labels)

    def point_of(self, a: int, b: int) -> int:
        """Index of the point where lines ``a`` and ``b`` meet."""
        return self._pair[(a, b) if a < b else (b, a)]

    def points_on(self, line: int) -> list[int]:
        return [k for k, p in enumerate(self.points) if line in p]

    def profile(self, line: int) -> tuple:
        """Sorted multiplicities of the points on ``line``."""
        return tuple(sorted(len(self.points[k]) for k in self.points_on(line)))

    def multiplicity_profile(self) -> dict:
        """Number of points of each multiplicity."""
        return dict(sorted(Counter(len(p) for p in self.points).items()))

    def point_index(self, lines) -> int:
        return self.points.index(tuple(sorted(lines)))

    def find_point(self, lines) -> int | None:
        """Index of the point containing all of ``lines``, if any."""
        lines = sorted(set(lines))
        if len(lines) < 2:
            raise ValueError("need at least two lines to name a point")
        k = self.point_of(lines[0], lines[1])
        return k if set(lines) <= set(self.points[k]) else None

    def relabel(self, perm) -> LineCombinatorics:
        """Combinatorics with line ``i`` renamed ``perm[i]``."""
        labels = [None] * self.n
        for i, j in enumerate(perm):
            labels[j] = self.line_labels[i]
        return LineCombinatorics(labels, [[perm[i] for i in p] for p in self.points])

    def sub(self, lines) -> LineCombinatorics:
        """Restriction to a subset of lines (renumbered in the given order)."""
        lines = list(lines)
        pos = {l: i for i, l in enumerate(lines)}
        pts = set()
        for p in self.points:
            q = tuple(sorted(pos[l] for l in p if l in pos))
            if len(q) >= 2:
                pts.add(q)
        return LineCombinatorics([self.line_labels[l] for l in lines], pts)

    def label_point(self, k: int) -> list[str]:
        return [self.line_labels[i] for i in self.points[k]]

    def to_json(self) -> dict:
        return {"lines": list(self.line_labels), "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data) -> LineCombinatorics:
        return cls(data["lines"], data["points"])


def compute_combinatorics(a: Arrangement) -> LineCombinatorics:
    """Singular points of an arrangement, each as the set of lines through it."""
    groups: dict[ProjPoint, set] = {}
    lines = a.lines
    for i, j in combinations(range(len(lines)), 2):
        p = meet_lines(lines[i], lines[j])
        groups.setdefault(p, set()).update((i, j))
    return LineCombinatorics(a.labels, [tuple(sorted(s)) for s in groups.values()])


def singular_points(a: Arrangement) -> dict:
    """Map from lattice point index to its coordinates."""
    c = compute_combinatorics(a)
    return {k: meet_lines(a.lines[p[0]], a.lines[p[1]]) for k, p in enumerate(c.points)}


def points_of_multiplicity(c: LineCombinatorics, k: int, mode: str = "exact") -> list[int]:
    if k < 2:
        raise ValueError("multiplicity filter needs k >= 2")
    if mode == "exact":
        return [i for i, p in enumerate(c.points) if len(p) == k]
    if mode == "at_least":
        return [i for i, p in enumerate(c.points) if len(p) >= k]
    raise ValueError(f"unknown mode {mode!r}")


def ordered_equiv(c1: LineCombinatorics, c2: LineCombinatorics) -> bool:
    if c1.n != c2.n:
        raise SizeMismatch(f"{c1.n} lines vs {c2.n} lines")
    return set(c1.points) == set(c2.points)


# -- isomorphism search --------------------------------------------------------

def _search(c1: LineCombinatorics, c2: LineCombinatorics, first_only: bool):
    n = c1.n
    if n != c2.n or len(c1.points) != len(c2.points):
        return []
    if c1.multiplicity_profile() != c2.multiplicity_profile():
        return []
    prof1 = [c1.profile(i) for i in range(n)]
    prof2 = [c2.profile(i) for i in range(n)]
    if Counter(prof1) != Counter(prof2):
        return []
    rarity = Counter(prof1)
    order = sorted(range(n), key=lambda i: (rarity[prof1[i]], [-x for x in prof1[i]], i))
    cands = {i: [j for j in range(n) if prof2[j] == prof1[i]] for i in range(n)}
    p1, p2 = c1.points, c2.points
    pt1 = c1.point_of
    pt2 = c2.point_of
    phi = [-1] * n
    used = [False] * n
    out = []

    def consistent(a, x, depth):
        for t in range(depth):
            b = order[t]
            y = phi[b]
            P = p1[pt1(a, b)]
            Q = p2[pt2(x, y)]
            if len(P) != len(Q):
                return False
            Qs = set(Q)
            for c in P:
                if phi[c] >= 0 and phi[c] not in Qs:
                    return False
            # lines already mapped into Q must come from P
            Ps = set(P)
            for t2 in range(depth):
                d = order[t2]
                if phi[d] in Qs and d not in Ps:
                    return False
        return True

    def rec(depth):
        if depth == n:
            out.append(tuple(phi))
            return first_only
        a = order[depth]
        for x in cands[a]:
            if used[x] or not consistent(a, x, depth):
                continue
            phi[a] = x
            used[x] = True
            if rec(depth + 1):
                return True
            phi[a] = -1
            used[x] = False
        return False

    rec(0)
    return out


def unordered_equiv(c1: LineCombinatorics, c2: LineCombinatorics):
    """A bijection ``phi`` (tuple, line i -> phi[i]) with phi(P1) = P2, or None."""
    found = _search(c1, c2, True)
    return found[0] if found else None


def automorphisms(c: LineCombinatorics) -> list[tuple]:
    return sorted(_search(c, c, False))


def is_isomorphism(c1: LineCombinatorics, c2: LineCombinatorics, phi) -> bool:
    if sorted(phi) != list(range(c1.n)) or c1.n != c2.n:
        return False
    return {tuple(sorted(phi[i] for i in p)) for p in c1.points} == set(c2.points)


# -- splitting-polygon patterns -------------------------------------------------

@dataclass(frozen=True, order=True)
class SPPattern:
    support: tuple
    polygon: tuple
    pivots: tuple
    corners: tuple

    def rotate(self, k: int) -> SPPattern:
        r = len(self.support)
        rot = lambda t: tuple(t[(i + k) % r] for i in range(r))
        return SPPattern(rot(self.support), rot(self.polygon), rot(self.pivots), rot(self.corners))

    def canonical(self) -> SPPattern:
        return min(self.rotate(k) for k in range(len(self.support)))

    def describe(self, c: LineCombinatorics) -> dict:
        lab = c.line_labels
        return {
            "support": [lab[i] for i in self.support],
            "polygon": [lab[i] for i in self.polygon],
            "pivots": [c.label_point(k) for k in self.pivots],
            "corners": [c.label_point(k) for k in self.corners],
        }


def is_sp_pattern(c: LineCombinatorics, support, polygon, pivots) -> bool:
    """Check the four splitting-polygon pattern conditions with cyclic indices."""
    r = len(support)
    if r < 3 or len(polygon) != r or len(pivots) != r:
        return False
    S, E = tuple(support), tuple(polygon)
    if len(set(S)) != r or len(set(E)) != r or set(S) & set(E):
        return False
    big = [set(p) for p in c.points if len(p) >= 3]
    Es = set(E)
    for i in range(r):
        if sum(1 for p in big if E[i] in p) != 3:
            return False
        P = set(c.points[pivots[i]])
        if len(P) < 3 or S[i] in P or S[(i + 1) % r] in P or P & Es != {E[i]}:
            return False
        q = c.find_point((E[i - 1], S[i], E[i]))
        if q is None or len(c.points[q]) != 3:
            return False
    return True


def pattern_scan(c: LineCombinatorics, r: int) -> list[SPPattern]:
    """All splitting-polygon patterns of size ``r``, up to cyclic rotation."""
    if r < 3:
        raise ValueError("patterns need r >= 3")
    big = [k for k, p in enumerate(c.points) if len(p) >= 3]
    deg3 = [l for l in range(c.n) if sum(1 for k in big if l in c.points[k]) == 3]
    found = set()

    def corner(e_prev, e):
        k = c.point_of(e_prev, e)
        p = c.points[k]
        if len(p) != 3:
            return None
        (s,) = set(p) - {e_prev, e}
        return s, k

    def extend(E):
        if len(E) == r:
            close = corner(E[-1], E[0])
            if close is None:
                return
            S = [close[0]]
            Q = [close[1]]
            for i in range(1, r):
                s, k = corner(E[i - 1], E[i])
                S.append(s)
                Q.append(k)
            if len(set(S)) != r or set(S) & set(E):
                return
            choices = []
            Es = set(E)
            for i in range(r):
                opts = [k for k in big
                        if E[i] in c.points[k]
                        and set(c.points[k]) & Es == {E[i]}
                        and S[i] not in c.points[k]
                        and S[(i + 1) % r] not in c.points[k]]
                if not opts:
                    return
                choices.append(opts)
            _product(choices, lambda piv: found.add(
                SPPattern(tuple(S), tuple(E), tuple(piv), tuple(Q)).canonical()))
            return
        for e in deg3:
            if e in E:
                continue
            if E and corner(E[-1], e) is None:
                continue
            extend(E + [e])

    extend([])
    return sorted(found)


def _product(choices, emit, prefix=()):
    if len(prefix) == len(choices):
        emit(prefix)
        return
    for x in choices[len(prefix)]:
        _product(choices, emit, prefix + (x,))
