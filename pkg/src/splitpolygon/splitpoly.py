"""Chains of lines through pivot points, their closure polynomial, and split
certificates.

Starting from a point ``Q_1 = B0 + l*B1`` moving on the first support line,
each edge joins the current corner to its pivot and the next corner is the
meet of that edge with the next support line.  The polygon closes exactly
when the last edge passes through ``Q_1``, i.e. when ``det(S_1, E_1, E_r)``
vanishes.  Every quantity is a polynomial in ``l`` with exact coefficients.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from gmpy2 import mpq

from .combinat import (Arrangement, LineCombinatorics, compute_combinatorics,
                       ordered_equiv, unordered_equiv)
from .nfield import (FieldElement, FieldTower, UniPoly, common_tower, galois_maps,
                     poly_gcd, quad_roots, rational_content_normalize)
from .plinth import Plinth, is_plinth, rigidity_certificate
from .projgeom import ProjLine, ProjPoint, cross, det3, dot, incident, meet_lines

log = logging.getLogger(__name__)


class DegenerateChain(ValueError):
    pass


class EdgeVanishes(ValueError):
    pass


class InconsistentFamily(ValueError):
    pass


SPLIT_VERDICTS = ("SplitByThm2_8", "SplitByThm2_6")


# -- symbolic lines ------------------------------------------------------------

def _strip_content(triple):
    """Divide a triple of polynomials by their gcd and a constant scale."""
    if not any(triple):
        raise DegenerateChain("edge vanishes identically")
    g = None
    for p in triple:
        if p:
            g = p if g is None else poly_gcd(g, p)
    g = g.monic()
    if g.degree > 0:
        triple = tuple(p // g for p in triple)
    coeffs = [c for p in triple for c in p.coeffs]
    if all(c.is_rational() for c in coeffs):
        qs = [c.rational() for c in coeffs]
        den = 1
        for q in qs:
            den = math.lcm(den, int(q.denominator))
        num = 0
        for q in qs:
            num = math.gcd(num, int(q * den))
        s = mpq(den, num)
        if next(p for p in triple if p).leading.rational() < 0:
            s = -s
    else:
        lead = next(p for p in triple if p).leading
        s = lead.inverse()
    return tuple(p.scale(s) if p else p for p in triple)


@dataclass(frozen=True)
class PencilLine:
    """A line whose coefficients are polynomials in the chain parameter."""

    coeffs: tuple

    def __post_init__(self):
        if not any(self.coeffs):
            raise DegenerateChain("pencil line with identically zero coefficients")

    def at(self, v) -> ProjLine:
        vals = [p(v) for p in self.coeffs]
        t = common_tower(*(x for x in vals if isinstance(x, FieldElement)))
        vals = [t.coerce(x) for x in vals]
        if not any(vals):
            raise EdgeVanishes(f"edge vanishes at {v}")
        return ProjLine(vals)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coeffs)

    def __repr__(self):
        return "(" + ", ".join(repr(p) for p in self.coeffs) + ")"


@dataclass
class ChainResult:
    plinth: Plinth
    param_base: tuple                 # raw coordinate triples (B0, B1)
    support: tuple                    # ProjLines S_1..S_r
    pivots: tuple                     # ProjPoints P_1..P_r
    edges: list
    corners: list
    closing_point: tuple
    delta_raw: UniPoly
    delta: UniPoly
    tower: FieldTower

    def parameter_of(self, q: ProjPoint) -> FieldElement:
        """The value of l with ``B0 + l*B1`` proportional to ``q``."""
        b0, b1 = self.param_base
        u = cross(q.coords, b0)
        w = cross(q.coords, b1)
        if not any(w):
            raise ValueError("point is the parameter base's point at infinity")
        if dot(self.support[0].coords, q.coords):
            raise ValueError("point is not on the first support line")
        k = next(i for i in range(3) if w[i])
        return -u[k] / w[k]


def _poly_triple(v, t):
    return tuple(UniPoly([x], t) for x in v)


def default_base(a: Arrangement, p: Plinth, c: LineCombinatorics) -> tuple:
    """First two lattice points on S_1, as coordinate triples."""
    s1 = p.support[0]
    pts = []
    for k in c.points_on(s1):
        other = next(l for l in c.points[k] if l != s1)
        pts.append(meet_lines(a.lines[s1], a.lines[other]))
        if len(pts) == 2:
            break
    if len(pts) < 2:
        S = a.lines[s1]
        for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            try:
                q = meet_lines(S, ProjLine([a.tower.coerce(x) for x in axis]))
            except ValueError:
                continue
            if q not in pts:
                pts.append(q)
            if len(pts) == 2:
                break
    return tuple(q.coords for q in pts)


def chain(a: Arrangement, p: Plinth, base=None, *, lattice: LineCombinatorics | None = None,
          support_lines=None, pivot_points=None) -> ChainResult:
    c = compute_combinatorics(a) if lattice is None else lattice
    if not is_plinth(c, p.support, p.pivots):
        raise ValueError("not a plinth of this arrangement")
    r = p.r
    S = tuple(support_lines) if support_lines is not None else tuple(a.lines[s] for s in p.support)
    if pivot_points is not None:
        P = tuple(pivot_points)
    else:
        P = tuple(meet_lines(a.lines[c.points[k][0]], a.lines[c.points[k][1]]) for k in p.pivots)
    if base is None:
        base = default_base(a, p, c)
    t = common_tower(a.tower.zero, *(x for v in base for x in v))
    b0, b1 = (tuple(t.coerce(x) for x in v) for v in base)
    if not any(cross(b0, b1)):
        raise ValueError("parameter base points coincide")
    if dot(S[0].coords, b0) or dot(S[0].coords, b1):
        raise ValueError("parameter base points must lie on the first support line")

    lam = UniPoly([t.zero, t.one], t)
    q = tuple(UniPoly([x], t) + lam * y for x, y in zip(b0, b1))
    corners, edges = [q], []
    for i in range(r):
        e = _strip_content(cross(q, _poly_triple(P[i].coords, t)))
        edges.append(PencilLine(e))
        nxt = _poly_triple(S[(i + 1) % r].coords, t)
        q = cross(e, nxt)
        if i < r - 1:
            if not any(q):
                raise DegenerateChain(f"edge {i + 1} coincides with support line {i + 2}")
            q = _strip_content(q)
            corners.append(q)
    closing = q
    s1 = _poly_triple(S[0].coords, t)
    draw = dot(s1, cross(edges[0].coeffs, edges[-1].coeffs))
    return ChainResult(p, (b0, b1), S, P, edges, corners, closing, draw,
                       rational_content_normalize(draw), t)


def specialize(cr: ChainResult, v) -> list[ProjLine]:
    return [e.at(v) for e in cr.edges]


# -- polygon checks ------------------------------------------------------------

@dataclass
class PolygonCheck:
    closes: bool
    fresh: bool
    counts_ok: bool
    per_edge_counts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.closes and self.fresh and self.counts_ok

    def to_json(self) -> dict:
        return {"closes": self.closes, "fresh": self.fresh, "counts_ok": self.counts_ok,
                "per_edge_counts": [list(x) for x in self.per_edge_counts]}


def verify_polygon(a: Arrangement, p: Plinth, edges, lattice: LineCombinatorics | None = None) -> PolygonCheck:
    """Check closure, freshness and per-edge singular-point counts.

    The required count on edge i is ``#A + r - m_i - 2`` with ``m_i`` the
    multiplicity of pivot i in ``a``; the observed count is the number of
    distinct points where edge i meets the other lines of ``a`` plus edges.
    """
    c = compute_combinatorics(a) if lattice is None else lattice
    r = p.r
    if len(edges) != r:
        raise ValueError(f"expected {r} edges")
    t = common_tower(a.tower.zero, *(x for e in edges for x in e.coords))
    S = [a.lines[s].lift(t) for s in p.support]
    E = [e.lift(t) for e in edges]
    P = [meet_lines(a.lines[c.points[k][0]], a.lines[c.points[k][1]]).lift(t) for k in p.pivots]

    closes = not det3((S[0], E[0], E[-1]))
    for i in range(r):
        if not incident(P[i], E[i]):
            closes = False
        if E[i - 1] == E[i]:
            closes = False
            continue
        if not incident(meet_lines(E[i - 1], E[i]), S[i]):
            closes = False

    base_lines = [l.lift(t) for l in a.lines]
    fresh = not any(e in set(base_lines) for e in E) and len(set(E)) == r

    everything = list(dict.fromkeys(base_lines + E))
    counts = []
    for i, e in enumerate(E):
        seen = {meet_lines(e, l) for l in everything if l != e}
        counts.append((len(seen), len(a.lines) + r - len(c.points[p.pivots[i]]) - 2))
    return PolygonCheck(closes, fresh, all(o == q for o, q in counts), counts)


# -- certificates --------------------------------------------------------------

@dataclass
class SplitCertificate:
    base_arrangement: Arrangement
    plinth: Plinth
    param_base: tuple
    base_field: FieldTower
    delta: UniPoly
    delta_irreducible: bool
    result_field: FieldTower
    lambdas: tuple
    arrangements: tuple
    checks: tuple
    equivalent: bool
    verdict: str
    components_claimed: int
    rigidity: str = "Unknown"
    notes: list = field(default_factory=list)

    @property
    def split(self) -> bool:
        return self.verdict in SPLIT_VERDICTS

    def lattices(self) -> list[LineCombinatorics]:
        return [compute_combinatorics(x) for x in self.arrangements]


def _edge_labels(a: Arrangement, r: int, labels):
    if labels is not None:
        return list(labels)
    n = len(a)
    out = [f"L{n + i + 1}" for i in range(r)]
    if set(out) & set(a.labels):
        out = [f"E{i + 1}" for i in range(r)]
    return out


def split(a: Arrangement, p: Plinth, base=None, *, lattice: LineCombinatorics | None = None,
          labels=None, components: int = 1, check_rigidity: bool = True) -> SplitCertificate:
    c = compute_combinatorics(a) if lattice is None else lattice
    notes = []
    rigid = "Unknown"
    if check_rigidity:
        rigid = rigidity_certificate(a, p, c).status
        if rigid != "Rigid":
            log.warning("plinth is not certified rigid; the verdict will be Degenerate")
            notes.append("plinth not certified rigid")
    cr = chain(a, p, base, lattice=c)
    delta = cr.delta
    labels = _edge_labels(a, p.r, labels)

    def cert(**kw):
        base_kw = dict(base_arrangement=a, plinth=p, param_base=cr.param_base, base_field=cr.tower,
                       delta=delta, rigidity=rigid, notes=notes)
        base_kw.update(kw)
        return SplitCertificate(**base_kw)

    if delta.degree < 2:
        return cert(delta_irreducible=False, result_field=cr.tower, lambdas=(), arrangements=(),
                    checks=(), equivalent=False, verdict="Degenerate", components_claimed=0)

    roots = quad_roots(delta)
    if roots.kind != "TwoInExtension":
        if c.find_point(p.support) is not None:
            notes.append("reducible closure polynomial; support lines are concurrent")
        pts_common = set(range(c.n))
        for k in p.pivots:
            pts_common &= set(c.points[k])
        if pts_common:
            notes.append("reducible closure polynomial; pivots are collinear")
    if roots.kind in ("Constant", "OneRoot"):
        return cert(delta_irreducible=False, result_field=roots.tower, lambdas=roots.roots,
                    arrangements=(), checks=(), equivalent=False, verdict="NoSplit",
                    components_claimed=0)

    t = roots.tower
    arrs, checks = [], []
    for v in roots.roots:
        edges = specialize(cr, v)
        checks.append(verify_polygon(a, p, edges, c))
        try:
            arrs.append(a.lift(t).extend(edges, labels))
        except ValueError:
            arrs.append(None)
    equivalent = None not in arrs and ordered_equiv(*(compute_combinatorics(x) for x in arrs))
    all_ok = all(ch.ok for ch in checks)
    if rigid != "Rigid" and check_rigidity:
        verdict = "Degenerate"
    elif roots.irreducible:
        verdict = "SplitByThm2_8" if equivalent and all_ok else "NoSplit"
    else:
        verdict = "SplitByThm2_6" if equivalent and all_ok else "NoSplit"
    return cert(delta_irreducible=roots.irreducible, result_field=t, lambdas=tuple(roots.roots),
                arrangements=tuple(arrs), checks=tuple(checks), equivalent=equivalent,
                verdict=verdict,
                components_claimed=2 * components if verdict in SPLIT_VERDICTS else 0)


@dataclass
class MultiSplitCertificate:
    certificates: list
    deltas_consistent: bool
    cross_equivalent: bool
    verdict: str
    components_claimed: int

    @property
    def arrangements(self) -> list[Arrangement]:
        return [x for ct in self.certificates for x in ct.arrangements]


def _conjugate_or_equal(d1: UniPoly, d2: UniPoly) -> bool:
    if d1 == d2:
        return True
    if d1.tower != d2.tower or d1.degree != d2.degree:
        return False
    try:
        maps = galois_maps(d1.tower)
    except ValueError:
        return False
    return any(d1.map_coeffs(g) == d2 for g in maps)


def multi_split(reps, base=None, **kw) -> MultiSplitCertificate:
    """Split several lattice-equivalent representatives with corresponding plinths.

    ``reps`` holds ``(arrangement, plinth)`` or ``(arrangement, plinth, base)``
    items.  Closure polynomials must agree up to a Galois map of their common
    tower; all resulting arrangements must share one ordered lattice.
    """
    reps = [tuple(x) for x in reps]
    if not reps:
        raise InconsistentFamily("no representatives")
    lats = [compute_combinatorics(x[0]) for x in reps]
    for lt in lats[1:]:
        if unordered_equiv(lats[0], lt) is None:
            raise InconsistentFamily("representatives have non-isomorphic lattices")
    certs = []
    for (x, lt) in zip(reps, lats):
        b = x[2] if len(x) > 2 else base
        certs.append(split(x[0], x[1], b, lattice=lt, **kw))
    consistent = all(_conjugate_or_equal(certs[0].delta, ct.delta) for ct in certs[1:])
    if not consistent:
        raise InconsistentFamily("closure polynomials differ across representatives")
    arrs = [x for ct in certs for x in ct.arrangements]
    cross_ok = bool(arrs) and None not in arrs and len({len(x) for x in arrs}) == 1
    if cross_ok:
        first = compute_combinatorics(arrs[0])
        cross_ok = all(ordered_equiv(first, compute_combinatorics(x)) for x in arrs[1:])
    ok = cross_ok and all(ct.split for ct in certs)
    return MultiSplitCertificate(certs, consistent, cross_ok, "Split" if ok else "NoSplit",
                                 2 * len(certs) if ok else 0)


# -- scanning ------------------------------------------------------------------

@dataclass
class SplittingScan:
    counts: dict                 # successful splittings per counting convention
    plinth_counts: dict          # all plinths per counting convention
    representatives: list        # one Plinth per class up to automorphism, rotation, reversal
    certificates: dict = field(default_factory=dict)


def scan_splittings(a: Arrangement, r: int, *, min_multiplicity: int = 2, predicate=None,
                    lattice: LineCombinatorics | None = None) -> SplittingScan:
    """Try every plinth of size ``r`` and count those carrying a splitting polygon.

    Splits are attempted once per automorphism class of plinths and the
    outcome is assumed constant on the class, which holds whenever every
    realization of the lattice is a Galois conjugate of ``a`` (as for the
    MacLane lattice).  Counts are given per convention: ``raw`` ordered
    tuples, ``cyclic`` up to rotation, ``auto`` adding lattice automorphisms
    and ``dihedral`` adding reversal of the polygon.
    """
    from .combinat import automorphisms
    from .plinth import enumerate_plinths, plinth_orbit

    c = compute_combinatorics(a) if lattice is None else lattice
    autos = automorphisms(c)
    whole = rigidity_certificate(a, None, c)
    reps = enumerate_plinths(c, r, min_multiplicity=min_multiplicity, dedup="auto", predicate=predicate)
    counts = dict.fromkeys(("raw", "cyclic", "auto", "dihedral"), 0)
    totals = dict.fromkeys(counts, 0)
    seen, good, certs = set(), [], {}
    seen_all = set()
    for p in reps:
        orbit = plinth_orbit(c, p, autos)
        mirror = plinth_orbit(c, p, autos, reversal=True)
        new_class = p not in seen_all
        seen_all |= mirror
        totals["raw"] += len(orbit)
        totals["cyclic"] += len(orbit) // r
        totals["auto"] += 1
        totals["dihedral"] += new_class
        ct = split(a, p, lattice=c, check_rigidity=not whole.complete)
        if not ct.split:
            continue
        counts["raw"] += len(orbit)
        counts["cyclic"] += len(orbit) // r
        counts["auto"] += 1
        if p not in seen:
            counts["dihedral"] += 1
            seen |= mirror
            good.append(p)
            certs[p] = ct
    return SplittingScan(counts, totals, good, certs)
