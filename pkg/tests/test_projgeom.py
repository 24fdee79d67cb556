import pytest
from gmpy2 import mpq
from hypothesis import assume, given, settings, strategies as st

from splitpolygon.nfield import QQ
from splitpolygon.projgeom import (DegenerateFrame, EqualLines, EqualPoints, ProjLine, ProjPoint,
                                   ProjTransform, apply, det3, frame_transform, incident,
                                   join_points, meet_lines)

from conftest import QZ


def P(*v):
    return ProjPoint([QQ(x) for x in v])


def L(*v):
    return ProjLine([QQ(x) for x in v])


small = st.integers(-6, 6)
triples = st.tuples(small, small, small).filter(any)


def test_join_examples():
    assert join_points(P(1, 0, 0), P(0, 1, 0)) == L(0, 0, 1)
    assert join_points(P(0, 1, 1), P(1, 1, 1)) == L(0, 1, -1)
    assert join_points(P(1, 0, 1), P(0, 1, 1)) == L(1, 1, -1)
    with pytest.raises(EqualPoints):
        join_points(P(1, 2, 3), P(2, 4, 6))


def test_meet_examples():
    assert meet_lines(L(1, 0, 0), L(0, 1, 0)) == P(0, 0, 1)
    assert meet_lines(L(1, 0, -1), L(0, 1, -1)) == P(1, 1, 1)
    with pytest.raises(EqualLines):
        meet_lines(L(0, 0, 1), L(0, 0, 1))


def test_incidence_and_det():
    assert incident(P(0, 1, 0), L(0, 0, 1))
    assert not incident(P(1, 1, 1), L(1, 0, 0))
    assert incident(P(1, 0, 1), L(1, 0, -1))
    assert det3([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1
    assert det3([(0, 0, 1), (0, 1, 0), (-1, 0, 0)]) == 1
    assert det3([L(1, 0, 0), L(0, 1, 0), L(1, 1, 0)]) == 0


def test_canonical_form():
    p = ProjPoint([QQ(0), QQ(3), QQ(6)])
    assert [c.rational() for c in p.coords] == [0, 1, 2]
    z = QZ.gen()
    assert ProjPoint([z, z * z, QZ.one]) == ProjPoint([QZ.one, z, z.inverse()])


STD = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(1, 1, 1)]


def test_frame_transform():
    assert frame_transform(STD, STD) == ProjTransform.identity()
    swap = frame_transform(STD, [P(0, 1, 0), P(1, 0, 0), P(0, 0, 1), P(1, 1, 1)])
    assert apply(swap, L(1, 0, 0)) == L(0, 1, 0)
    assert apply(swap, P(1, 2, 3)) == P(2, 1, 3)
    with pytest.raises(DegenerateFrame):
        frame_transform([P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(0, 0, 1)], STD)


def test_identity_apply():
    assert apply(ProjTransform.identity(), P(1, 2, 3)) == P(1, 2, 3)


@settings(max_examples=500)
@given(u=triples, v=triples)
def test_duality(u, v):
    assume(P(*u) != P(*v))
    line = join_points(P(*u), P(*v))
    point = meet_lines(L(*u), L(*v))
    assert line.coords == point.coords
    assert incident(P(*u), line) and incident(P(*v), line)


@settings(max_examples=300)
@given(l=triples, m=triples, n=triples)
def test_concurrency_matches_meet(l, m, n):
    assume(L(*l) != L(*m))
    q = meet_lines(L(*l), L(*m))
    assert (det3([l, m, n]) == 0) == incident(q, L(*n))


@settings(max_examples=300)
@given(rows=st.tuples(triples, triples, triples), p=triples, l=triples)
def test_transforms_preserve_incidence(rows, p, l):
    assume(det3(rows) != 0)
    t = ProjTransform([[QQ(x) for x in r] for r in rows])
    pt, ln = P(*p), L(*l)
    assert incident(pt, ln) == incident(apply(t, pt), apply(t, ln))
    on = meet_lines(ln, L(1, 2, 3)) if ln != L(1, 2, 3) else meet_lines(ln, L(0, 0, 1))
    assert incident(apply(t, on), apply(t, ln))
    assert apply(t.inverse(), apply(t, pt)) == pt


@settings(max_examples=100)
@given(pts=st.lists(triples, min_size=4, max_size=4))
def test_frame_maps_points(pts):
    dst = [P(*x) for x in pts]
    try:
        t = frame_transform(STD, dst)
    except (DegenerateFrame, ValueError):
        return
    assert [apply(t, p) for p in STD] == dst
