"""Plinths, their enumeration, and constructive rigidity certificates.

A rigidity certificate is a construction sequence: four lattice points in
general position are fixed as a projective frame, then lines through two
forced points and points on two forced lines become forced in turn.  A third
step kind forces the edges of a closed polygon whose support lines and pivot
points are already forced, provided the closure polynomial of that chain does
not vanish identically; such a polygon can only take finitely many positions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .combinat import Arrangement, LineCombinatorics, automorphisms, compute_combinatorics
from .projgeom import (ProjPoint, apply, frame_transform, in_general_position, incident,
                       join_points, meet_lines)

log = logging.getLogger(__name__)


class IndexOutOfRange(IndexError):
    pass


class DegenerateArrangement(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Plinth:
    support: tuple
    pivots: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "pivots", tuple(self.pivots))

    @property
    def r(self) -> int:
        return len(self.support)

    @classmethod
    def from_lines(cls, c: LineCombinatorics, support, pivot_lines) -> Plinth:
        """Build from pivot points named by (a subset of) the lines through them."""
        pivots = []
        for lines in pivot_lines:
            k = c.find_point(lines)
            if k is None:
                raise ValueError(f"lines {lines} are not concurrent in this lattice")
            pivots.append(k)
        return cls(tuple(support), tuple(pivots))

    @classmethod
    def from_labels(cls, c: LineCombinatorics, support, pivots) -> Plinth:
        idx = {lab: i for i, lab in enumerate(c.line_labels)}
        return cls.from_lines(c, [idx[s] for s in support], [[idx[x] for x in p] for p in pivots])

    def pivot_lines(self, c: LineCombinatorics) -> list[tuple]:
        return [c.points[k] for k in self.pivots]

    def transport(self, old: LineCombinatorics, new: LineCombinatorics, line_map=None) -> Plinth:
        """Re-index into ``new``, where line i of ``old`` is line ``line_map[i]`` (default: i)."""
        f = (lambda i: i) if line_map is None else (lambda i: line_map[i])
        return Plinth.from_lines(new, [f(s) for s in self.support],
                                 [[f(i) for i in p] for p in self.pivot_lines(old)])

    def rotate(self, k: int) -> Plinth:
        r = self.r
        return Plinth(tuple(self.support[(i + k) % r] for i in range(r)),
                      tuple(self.pivots[(i + k) % r] for i in range(r)))

    def reverse(self) -> Plinth:
        """Same polygon traversed the other way round."""
        S, P = self.support, self.pivots
        return Plinth((S[0],) + S[:0:-1], P[::-1])

    def to_json(self, c: LineCombinatorics) -> dict:
        lab = c.line_labels
        return {"support": [lab[i] for i in self.support],
                "pivots": [c.label_point(k) for k in self.pivots]}

    @classmethod
    def from_json(cls, c: LineCombinatorics, data) -> Plinth:
        return cls.from_labels(c, data["support"], data["pivots"])


def is_plinth(c: LineCombinatorics, support, pivots) -> bool:
    support, pivots = tuple(support), tuple(pivots)
    r = len(support)
    if len(pivots) != r:
        raise ValueError("support and pivots must have the same length")
    if r < 3:
        raise ValueError("plinths need r >= 3")
    for s in support:
        if not 0 <= s < c.n:
            raise IndexOutOfRange(f"line index {s} out of range")
    for k in pivots:
        if not 0 <= k < len(c.points):
            raise IndexOutOfRange(f"point index {k} out of range")
    if len(set(support)) != r or len(set(pivots)) != r:
        return False
    for i in range(r):
        P = c.points[pivots[i]]
        if support[i] in P or support[(i + 1) % r] in P:
            return False
    return True


# -- enumeration ---------------------------------------------------------------

def _raw_plinths(c: LineCombinatorics, r: int, min_multiplicity: int):
    pts = [k for k, p in enumerate(c.points) if len(p) >= min_multiplicity]
    for S in permutations(range(c.n), r):
        choices = []
        for i in range(r):
            a, b = S[i], S[(i + 1) % r]
            choices.append([k for k in pts if a not in c.points[k] and b not in c.points[k]])
        yield from _pivot_tuples(S, choices, ())


def _pivot_tuples(S, choices, prefix):
    if len(prefix) == len(choices):
        yield Plinth(S, prefix)
        return
    for k in choices[len(prefix)]:
        if k not in prefix:
            yield from _pivot_tuples(S, choices, prefix + (k,))


def _image(c: LineCombinatorics, p: Plinth, phi) -> Plinth:
    return Plinth(tuple(phi[s] for s in p.support),
                  tuple(c.point_index([phi[i] for i in c.points[k]]) for k in p.pivots))


def plinth_orbit(c: LineCombinatorics, p: Plinth, autos=None, rotations=True,
                 reversal=False) -> set:
    autos = automorphisms(c) if autos is None else autos
    out = set()
    for q0 in (p, p.reverse()) if reversal else (p,):
        for phi in autos:
            q = _image(c, q0, phi)
            if rotations:
                out.update(q.rotate(k) for k in range(p.r))
            else:
                out.add(q)
    return out


def table_shape(c: LineCombinatorics, p: Plinth) -> bool:
    """Support not concurrent, S_(i-1) through P_i, pivots not on a common line."""
    r = p.r
    if c.find_point(p.support) is not None:
        return False
    for i in range(r):
        if p.support[i - 1] not in c.points[p.pivots[i]]:
            return False
    common = set(range(c.n))
    for k in p.pivots:
        common &= set(c.points[k])
    return not common


def enumerate_plinths(c: LineCombinatorics, r: int, *, min_multiplicity: int = 2,
                      dedup: str = "cyclic", predicate=None) -> list[Plinth]:
    """Plinths of size ``r``.

    ``dedup`` is ``raw`` (ordered tuples), ``cyclic`` (up to rotation),
    ``auto`` (up to rotation and lattice automorphisms) or ``dihedral``
    (additionally up to reversing the polygon); representatives are the
    lexicographically smallest members of their classes.  ``predicate``
    filters plinths before deduplication and must be invariant under the
    chosen equivalence.
    """
    if r < 3:
        raise ValueError("plinths need r >= 3")
    if c.n < r:
        return []
    raw = [p for p in _raw_plinths(c, r, min_multiplicity) if predicate is None or predicate(c, p)]
    if dedup == "raw":
        return sorted(raw)
    if dedup == "cyclic":
        return sorted({min(p.rotate(k) for k in range(r)) for p in raw})
    if dedup in ("auto", "dihedral"):
        autos = automorphisms(c)
        seen, reps = set(), []
        for p in sorted(raw):
            if p in seen:
                continue
            orbit = plinth_orbit(c, p, autos, reversal=dedup == "dihedral")
            seen |= orbit
            reps.append(min(orbit))
        return sorted(reps)
    raise ValueError(f"unknown dedup mode {dedup!r}")


def plinth_counts(c: LineCombinatorics, r: int, *, min_multiplicity: int = 2, predicate=None) -> dict:
    return {mode: len(enumerate_plinths(c, r, min_multiplicity=min_multiplicity,
                                        dedup=mode, predicate=predicate))
            for mode in DEDUP_MODES}


DEDUP_MODES = ("raw", "cyclic", "auto", "dihedral")


# -- rigidity ------------------------------------------------------------------

@dataclass
class RigidityCertificate:
    status: str                     # "Rigid" or "Unknown"
    frame: tuple = ()
    order: list = field(default_factory=list)
    complete: bool = False          # every line of the arrangement is forced

    @property
    def rigid(self) -> bool:
        return self.status == "Rigid"

    def to_json(self) -> dict:
        return {"status": self.status, "frame": list(self.frame),
                "order": self.order, "complete": self.complete}


class _Closure:
    def __init__(self, a: Arrangement, c: LineCombinatorics, polygon_ok):
        self.a, self.c = a, c
        self.lines_on = [c.points_on(l) for l in range(c.n)]
        self.polygon_ok = polygon_ok
        self.memo = {}

    def run(self, frame):
        c = self.c
        fp, fl = set(frame), set()
        steps = []
        while True:
            changed = True
            while changed:
                changed = False
                for l in range(c.n):
                    if l in fl:
                        continue
                    known = [k for k in self.lines_on[l] if k in fp]
                    if len(known) >= 2:
                        fl.add(l)
                        steps.append({"kind": "line", "line": l, "through": known[:2]})
                        changed = True
                for k, P in enumerate(c.points):
                    if k in fp:
                        continue
                    known = [l for l in P if l in fl]
                    if len(known) >= 2:
                        fp.add(k)
                        steps.append({"kind": "point", "point": k, "meet": known[:2]})
                        changed = True
            if len(fl) == c.n:
                return fp, fl, steps
            step = self._polygon_step(fp, fl)
            if step is None:
                return fp, fl, steps
            fl.update(step["polygon"])
            steps.append(step)

    def _polygon_step(self, fp, fl):
        key = (frozenset(fp), frozenset(fl))
        if key not in self.memo:
            self.memo[key] = self._find_polygon(fp, fl)
        return self.memo[key]

    def _find_polygon(self, fp, fl):
        c = self.c
        free = [l for l in range(c.n) if l not in fl]

        def corner_support(e, f):
            return [l for l in c.points[c.point_of(e, f)] if l in fl]

        def pivots_for(E, S):
            r, Es, P = len(E), set(E), []
            for i in range(r):
                opts = [k for k in self.lines_on[E[i]] if k in fp
                        and set(c.points[k]) & Es == {E[i]}
                        and S[i] not in c.points[k] and S[(i + 1) % r] not in c.points[k]]
                if not opts:
                    return None
                P.append(opts[0])
            return P

        def grow(E):
            if len(E) >= 3:
                close = corner_support(E[-1], E[0])
                if close:
                    S = [close[0]] + [corner_support(E[i - 1], E[i])[0] for i in range(1, len(E))]
                    if len(set(S)) == len(S):
                        P = pivots_for(E, S)
                        if P is not None and self.polygon_ok(tuple(S), tuple(E), tuple(P)):
                            return {"kind": "polygon", "support": S, "polygon": list(E), "pivots": P}
            if len(E) == 4:
                return None
            for f in free:
                if f > E[0] and f not in E and corner_support(E[-1], f):
                    found = grow(E + [f])
                    if found:
                        return found
            return None

        for e in free:
            found = grow([e])
            if found:
                return found
        return None


def _polygon_checker(a: Arrangement, c: LineCombinatorics):
    from .splitpoly import chain, DegenerateChain

    cache = {}

    def ok(S, E, P):
        key = (S, E, P)
        if key not in cache:
            try:
                cr = chain(a, Plinth(S, P), lattice=c)
                cache[key] = not cr.delta.is_zero()
            except DegenerateChain:
                cache[key] = False
        return cache[key]

    return ok


def rigidity_certificate(a: Arrangement, p: Plinth | None = None,
                         c: LineCombinatorics | None = None) -> RigidityCertificate:
    """Certify by construction that the plinth (or, with ``p=None``, every
    line) is determined up to projective transformation.

    Frames are tried in lattice order; a frame forcing the whole arrangement
    is preferred, otherwise the first frame forcing the plinth is used.
    """
    c = compute_combinatorics(a) if c is None else c
    coords = {}

    def pt(k):
        if k not in coords:
            i, j = c.points[k][:2]
            coords[k] = meet_lines(a.lines[i], a.lines[j])
        return coords[k]

    targets_l = set(p.support) if p is not None else set(range(c.n))
    targets_p = set(p.pivots) if p is not None else set()
    closure = _Closure(a, c, _polygon_checker(a, c))
    on_line = [set(c.points_on(l)) for l in range(c.n)]
    fallback = None
    any_frame = False
    for frame in combinations(range(len(c.points)), 4):
        if any(len(on_line[l] & set(frame)) >= 3 for l in range(c.n)):
            continue
        fp, fl, steps = closure.run(frame)
        complete = len(fl) == c.n
        hits = targets_l <= fl and targets_p <= fp
        if not (complete or (hits and fallback is None)):
            if not any_frame and in_general_position([pt(k) for k in frame]):
                any_frame = True
            continue
        if not in_general_position([pt(k) for k in frame]):
            continue
        any_frame = True
        cert = RigidityCertificate("Rigid", tuple(frame), steps, complete)
        if complete:
            return cert
        fallback = cert
    if fallback is not None:
        return fallback
    if not any_frame and not _has_frame(a, c, pt):
        raise DegenerateArrangement("no four singular points in general position")
    return RigidityCertificate("Unknown")


def _has_frame(a, c, pt):
    for frame in combinations(range(len(c.points)), 4):
        if in_general_position([pt(k) for k in frame]):
            return True
    return False


def replay_certificate(a: Arrangement, cert: RigidityCertificate,
                       c: LineCombinatorics | None = None) -> dict:
    """Rebuild every forced object starting from the standard frame.

    The frame points of ``a`` are sent to ``[1:0:0], [0:1:0], [0:0:1],
    [1:1:1]`` by a transform ``T``; the construction sequence is then run
    from those four points alone.  Polygon steps pick the closure root
    matching ``T(a)``.  Returns the rebuilt ``lines`` and ``points`` together
    with ``T`` and a flag telling whether every rebuilt line equals its image
    under ``T``.
    """
    from .splitpoly import chain, specialize

    if not cert.rigid:
        raise ValueError("only Rigid certificates can be replayed")
    c = compute_combinatorics(a) if c is None else c
    t = a.tower
    src = []
    for k in cert.frame:
        i, j = c.points[k][:2]
        src.append(meet_lines(a.lines[i], a.lines[j]))
    std = [ProjPoint([t.coerce(x) for x in v]) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))]
    T = frame_transform(src, std)
    image = [apply(T, l) for l in a.lines]
    pts = dict(zip(cert.frame, std))
    lines = {}
    for st in cert.order:
        if st["kind"] == "line":
            k1, k2 = st["through"]
            lines[st["line"]] = join_points(pts[k1], pts[k2])
        elif st["kind"] == "point":
            l1, l2 = st["meet"]
            pts[st["point"]] = meet_lines(lines[l1], lines[l2])
        else:
            S, E, P = st["support"], st["polygon"], st["pivots"]
            moved = Arrangement(image, a.labels, a.tower)
            cr = chain(moved, Plinth(tuple(S), tuple(P)), lattice=c,
                       support_lines=[lines[s] for s in S], pivot_points=[pts[k] for k in P])
            lam = cr.parameter_of(meet_lines(image[E[0]], lines[S[0]]))
            if cr.delta(lam):
                raise ValueError("polygon step does not close at the arrangement's parameter")
            for e, l in zip(E, specialize(cr, lam)):
                lines[e] = l
    exact = all(lines[l] == image[l] for l in lines) and all(
        all(incident(pts[k], image[l]) for l in c.points[k]) for k in pts)
    return {"lines": lines, "points": pts, "transform": T, "exact": exact}
