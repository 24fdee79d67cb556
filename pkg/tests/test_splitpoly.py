import random

import pytest
from gmpy2 import mpq

from splitpolygon import catalog
from splitpolygon.combinat import compute_combinatorics, ordered_equiv
from splitpolygon.nfield import QQ, UniPoly, galois_maps, quad_roots
from splitpolygon.plinth import enumerate_plinths
from splitpolygon.projgeom import ProjLine, ProjPoint, cross
from splitpolygon.splitpoly import (SPLIT_VERDICTS, DegenerateChain, EdgeVanishes, InconsistentFamily,
                                    PencilLine, chain, multi_split, specialize, split, verify_polygon)

from conftest import QZ

PRESETS = {
    "maclane": ("base5", [((0, 1), (1, 0), (0, -1)), ((1, -1), (-1, 0), (0, 1)), ((-1, 1), (0, 1), (0, -1))],
                [1, -1, 1]),
    "falk_sturmfels": ("base6", [((0, -1), (1, 0), (0, 1)), ((1, 0), (-1, 0), (0, -1)), ((-1, 0), (1, 1), (0, 0))],
                       [-1, 1, 1]),
    "nazir_yoshinaga": ("base6", [((0, -1), (1, 0), (0, 1)), ((1, 0), (-1, 0), (0, -1)), ((1, 0), (0, 1), (0, -1))],
                        [1, 0, 1]),
    "quadrilateral": ("base7quad", [((-1, 2), (0, -1), (1, 0)), ((-1, 2), (1, -2), (1, 0)),
                                    ((0, -2), (-1, 2), (0, 0)), ((0, 2), (1, 0), (0, -2))],
                      [-1, 0, 2]),
}


def pencil(triple):
    return tuple(UniPoly([QQ(a), QQ(b)], QQ) for a, b in triple)


def proportional(u, v):
    return all(x.is_zero() for x in cross(u, v))


def preset_chain(name):
    base, _, _ = PRESETS[name]
    e = catalog.build(base)
    pr = e.presets[name]
    return e, chain(e.arrangement, pr.plinth(e.lattice), pr.base, lattice=e.lattice)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_edges_and_delta(name):
    _, edges, delta = PRESETS[name]
    _, cr = preset_chain(name)
    assert len(cr.edges) == len(edges)
    for e, want in zip(cr.edges, edges):
        assert e.degree <= 1
        assert proportional(e.coeffs, pencil(want))
    assert [x.rational() for x in cr.delta.coeffs] == delta


def test_raw_delta_sign():
    _, cr = preset_chain("falk_sturmfels")
    assert [x.rational() for x in cr.delta_raw.coeffs] == [1, -1, -1]


def test_verify_polygon_examples():
    e, cr = preset_chain("maclane")
    a, p = e.arrangement, e.plinth("maclane")
    z = QZ.gen()
    ok = verify_polygon(a, p, specialize(cr, z))
    assert ok.ok and ok.per_edge_counts == [(4, 4)] * 3
    one = verify_polygon(a, p, specialize(cr, QQ(1)))
    assert not one.closes
    zero = verify_polygon(a, p, specialize(cr, QQ(0)))
    assert not zero.fresh
    assert specialize(cr, QQ(0))[0] == a.lines[a.index("L4")]


def test_edge_vanishes():
    pen = PencilLine(pencil(((0, 1), (0, 2), (0, 0))))
    with pytest.raises(EdgeVanishes):
        pen.at(QQ(0))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_closure_iff_delta_vanishes(name):
    e, cr = preset_chain(name)
    a, p = e.arrangement, e.plinth(name)
    roots = quad_roots(cr.delta)
    for v in roots.roots:
        assert verify_polygon(a, p, specialize(cr, v)).closes
    tried = 0
    for v in (mpq(2), mpq(-3), mpq(1, 3), mpq(5, 2), mpq(-7, 4), mpq(11), mpq(-2, 9)):
        try:
            edges = specialize(cr, QQ(v))
        except EdgeVanishes:
            continue
        assert cr.delta(QQ(v)) != 0
        assert not verify_polygon(a, p, edges).closes
        tried += 1
    assert tried >= 5


def test_delta_degree_on_random_plinths():
    rng = random.Random(11)
    pools = []
    for name, args in (("base6", ()), ("base7quad", ()), ("maclane", (1,)), ("falk_sturmfels", (1,)),
                       ("quadrilateral", (1,))):
        en = catalog.build(name, *args)
        pool = enumerate_plinths(en.lattice, 3, dedup="raw")
        if not args:
            pool += enumerate_plinths(en.lattice, 4, dedup="cyclic")
        pools.append((en, pool))
    done = 0
    while done < 100:
        en, plinths = rng.choice(pools)
        p = rng.choice(plinths)
        try:
            cr = chain(en.arrangement, p, lattice=en.lattice)
        except (DegenerateChain, ValueError):
            continue
        assert cr.delta.degree <= 2
        assert all(e.degree <= 1 for e in cr.edges)
        done += 1


def test_maclane_split_and_galois_exchange():
    e = catalog.build("base5")
    ct = split(e.arrangement, e.plinth("maclane"), e.presets["maclane"].base)
    assert ct.verdict == "SplitByThm2_8" and ct.components_claimed == 2
    assert ct.delta_irreducible and ct.equivalent and ct.rigidity == "Rigid"
    a1, a2 = ct.arrangements
    flip = galois_maps(ct.result_field)[1]
    moved = [ProjLine([flip(x) for x in l.coords]) for l in a1.lines]
    assert moved == list(a2.lines)
    assert ordered_equiv(*ct.lattices())


def test_same_plinth_roots():
    base = catalog.build("base5")
    ct = split(base.arrangement, base.plinth("maclane"), base.presets["maclane"].base)
    a1 = ct.arrangements[0]
    c1 = compute_combinatorics(a1)
    p = base.plinth("maclane").transport(base.lattice, c1)
    cr = chain(a1, p, base.presets["maclane"].base, lattice=c1)
    roots = quad_roots(cr.delta)
    assert roots.kind == "TwoInField"
    assert set(roots.roots) == set(ct.lambdas)


def test_verdicts_over_base5_plinths(base5):
    verdicts = set()
    for p in enumerate_plinths(base5.lattice, 3, dedup="auto"):
        try:
            ct = split(base5.arrangement, p, lattice=base5.lattice)
        except DegenerateChain:
            continue
        verdicts.add(ct.verdict)
        assert ct.split == (ct.verdict in SPLIT_VERDICTS)
        assert ct.components_claimed == (2 if ct.split else 0)
        if ct.verdict == "SplitByThm2_8":
            assert ct.delta_irreducible and ct.equivalent
    assert "SplitByThm2_8" in verdicts and verdicts - {"SplitByThm2_8"}


def test_multi_split_inconsistent():
    b5, fig1 = catalog.build("base5"), catalog.build("fig1")
    with pytest.raises(InconsistentFamily):
        multi_split([(b5.arrangement, b5.plinth("maclane")), (fig1.arrangement, fig1.plinth("rigid"))])
    with pytest.raises(InconsistentFamily):
        multi_split([])


def test_multi_split_single_family():
    b5 = catalog.build("base5")
    mc = multi_split([(b5.arrangement, b5.plinth("maclane"), b5.presets["maclane"].base)])
    assert mc.verdict == "Split" and mc.components_claimed == 2


def test_parameter_of_roundtrip():
    _, cr = preset_chain("maclane")
    for v in (QQ(3), QQ(mpq(-1, 2))):
        b0, b1 = cr.param_base
        q = [x + v * y for x, y in zip(b0, b1)]
        assert cr.parameter_of(ProjPoint(q)) == v
