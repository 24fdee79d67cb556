import itertools

import pytest
from hypothesis import given, settings, strategies as st

from splitpolygon import catalog
from splitpolygon.combinat import Arrangement, automorphisms, compute_combinatorics
from splitpolygon.nfield import QQ
from splitpolygon.plinth import (DegenerateArrangement, IndexOutOfRange, Plinth, enumerate_plinths,
                                 is_plinth, plinth_counts, replay_certificate, rigidity_certificate,
                                 table_shape)


def rat(*rows):
    return Arrangement([[QQ(x) for x in r] for r in rows])


def brute_count(c, r, m=2):
    pts = [k for k, p in enumerate(c.points) if len(p) >= m]
    n = 0
    for S in itertools.permutations(range(c.n), r):
        for P in itertools.product(pts, repeat=r):
            if len(set(P)) < r:
                continue
            if all(S[i] not in c.points[P[i]] and S[(i + 1) % r] not in c.points[P[i]] for i in range(r)):
                n += 1
    return n


def test_is_plinth_examples(base5):
    c = base5.lattice
    mac = base5.plinth("maclane")
    assert is_plinth(c, mac.support, mac.pivots)
    bad = (c.point_index((0, 1, 2)),) + mac.pivots[1:]
    assert not is_plinth(c, mac.support, bad)
    six = catalog.build("base6")
    fs = six.plinth("falk_sturmfels")
    assert is_plinth(six.lattice, fs.support, fs.pivots)
    with pytest.raises(IndexOutOfRange):
        is_plinth(c, (0, 1, 9), mac.pivots)
    with pytest.raises(IndexOutOfRange):
        is_plinth(c, mac.support, (0, 1, 99))


def test_raw_counts_match_brute_force(base5):
    cases = [(base5.lattice, 3), (base5.lattice, 4), (catalog.build("base6").lattice, 3),
             (catalog.build("fig1").lattice, 3)]
    for c, r in cases:
        assert len(enumerate_plinths(c, r, dedup="raw")) == brute_count(c, r)
    c = base5.lattice
    assert len(enumerate_plinths(c, 3, dedup="raw", min_multiplicity=3)) == brute_count(c, 3, 3)


def test_small_lattice_has_no_plinths():
    c = compute_combinatorics(rat((1, 0, 0), (0, 1, 0)))
    assert enumerate_plinths(c, 3) == []


def test_dedup_counts_nest(base5):
    counts = plinth_counts(base5.lattice, 3)
    assert counts["raw"] == 3 * counts["cyclic"]
    assert counts["raw"] >= counts["cyclic"] >= counts["auto"] >= counts["dihedral"] > 0
    assert base5.plinth("maclane") in enumerate_plinths(base5.lattice, 3, dedup="raw")


def test_maclane_counts(maclane1):
    c = maclane1.lattice
    assert plinth_counts(c, 3) == {"raw": 29520, "cyclic": 9840, "auto": 207, "dihedral": 120}
    shaped = plinth_counts(c, 3, predicate=table_shape)
    assert shaped["raw"] == 1584 and shaped["auto"] == 11


def test_rotation_and_reversal(base5):
    p = base5.plinth("maclane")
    c = base5.lattice
    assert p.rotate(3) == p
    assert p.reverse().reverse() == p
    q = p.reverse()
    assert is_plinth(c, q.support, q.pivots)
    assert Plinth.from_json(c, p.to_json(c)) == p


@settings(max_examples=100)
@given(st.data())
def test_is_plinth_automorphism_invariant(data):
    e = catalog.build("maclane", 1)
    c = e.lattice
    autos = automorphisms(c)
    S = data.draw(st.permutations(range(c.n)))[:3]
    P = tuple(data.draw(st.lists(st.integers(0, len(c.points) - 1), min_size=3, max_size=3, unique=True)))
    phi = data.draw(st.sampled_from(autos))
    S2 = tuple(phi[s] for s in S)
    P2 = tuple(c.point_index(sorted(phi[i] for i in c.points[k])) for k in P)
    assert is_plinth(c, S, P) == is_plinth(c, S2, P2)


def test_rigid_bases():
    for name in ("base5", "base6", "base7quad"):
        e = catalog.build(name)
        cert = rigidity_certificate(e.arrangement)
        assert cert.rigid and cert.complete, name
        assert replay_certificate(e.arrangement, cert)["exact"]


def test_fig1_pivot_rigidity():
    e = catalog.build("fig1")
    assert rigidity_certificate(e.arrangement, e.plinth("rigid")).rigid
    assert rigidity_certificate(e.arrangement, e.plinth("loose")).status == "Unknown"


def test_free_line_is_unknown():
    generic = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    # a fifth line through [0:0:1] only; two choices of slope give the same lattice
    a = rat(*generic, (2, -3, 0))
    b = rat(*generic, (5, -7, 0))
    assert compute_combinatorics(a) == compute_combinatorics(b)
    assert rigidity_certificate(a).status == "Unknown"


def test_degenerate_arrangement():
    with pytest.raises(DegenerateArrangement):
        rigidity_certificate(rat((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)))


def test_replay_exact(entries):
    for e in entries:
        if e.name in ("ml_table1", "rybnikov"):
            continue
        cert = rigidity_certificate(e.arrangement)
        if cert.rigid:
            assert replay_certificate(e.arrangement, cert)["exact"], e.title
    mac = catalog.build("maclane", 2)
    cert = rigidity_certificate(mac.arrangement)
    assert cert.complete
    out = replay_certificate(mac.arrangement, cert)
    assert out["exact"] and len(out["lines"]) == 8
