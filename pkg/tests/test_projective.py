import random

import pytest

from porism.errors import DegenerateInputError
from porism.projective import (Conic, P1Point, ProjLine, ProjPoint,
                               ProjTransform, classify, classify_normalized,
                               find_point, intersect_conics,
                               intersect_line_conic, multiplicity_structure,
                               normal_form_conic, normalize_tangent_pair,
                               other_intersection, parametrize, polar,
                               tangency_data, tangency_points, tangent_at)

from conftest import random_smooth_conic, random_smooth_pair


def test_point_canonicalization(F7):
    assert ProjPoint(F7, [2, 4, 6]) == ProjPoint(F7, [1, 2, 3])
    assert ProjPoint(F7, [0, 3, 5]) == ProjPoint(F7, [0, 1, 4])
    with pytest.raises(ValueError):
        ProjPoint(F7, [0, 0, 0])


def test_conic_needs_nonzero_coeffs(F5):
    with pytest.raises(ValueError):
        Conic(F5, [0, 0, 0, 0, 0, 0])


def test_smoothness_is_determinant(F7):
    # xy - z^2 is smooth; x^2 is a double line
    assert Conic(F7, [0, 0, -1, 1, 0, 0]).is_smooth()
    assert not Conic(F7, [1, 0, 0, 0, 0, 0]).is_smooth()


def test_tangent_meets_conic_once(F13):
    rng = random.Random(3)
    for _ in range(20):
        conic = random_smooth_conic(F13, rng)
        p = find_point(conic, rng.randrange(100))
        line = tangent_at(conic, p)
        pts = intersect_line_conic(conic, line)
        assert pts == [(p, 2)]


def test_polar_duality(F11):
    rng = random.Random(5)
    for _ in range(20):
        conic = random_smooth_conic(F11, rng)
        q = ProjPoint(F11, [rng.randrange(11) for _ in range(3)]
                      if rng.random() < 0.9 else [1, 0, 0])
        line = polar(conic, q)
        # the polar of a point on the conic is its tangent
        if conic.contains(q):
            assert line == tangent_at(conic, q)
        # reciprocity: p on polar(q) iff q on polar(p)
        for pt, _ in intersect_line_conic(conic, line):
            if pt.field == F11:
                assert tangent_at(conic, pt).contains(q)


def test_other_intersection_vieta(F13):
    rng = random.Random(11)
    for _ in range(30):
        conic = random_smooth_conic(F13, rng)
        p = find_point(conic, rng.randrange(100))
        # a random line through p
        q = ProjPoint(F13, [rng.randrange(13) for _ in range(3)])
        while q == p:
            q = ProjPoint(F13, [rng.randrange(13) for _ in range(3)])
        from porism.projective import line_through
        line = line_through(p, q)
        r = other_intersection(conic, line, p)
        assert conic.contains(r) and line.contains(r)
        # involution: the other point of r is p again (when transversal)
        if r != p:
            assert other_intersection(conic, line, r) == p


def test_parametrization_round_trip(F13):
    rng = random.Random(17)
    for _ in range(25):
        conic = random_smooth_conic(F13, rng)
        par = parametrize(conic, find_point(conic, rng.randrange(100)))
        for v in range(13):
            u = P1Point.affine(F13(v))
            pt = par.point_at(u)
            assert conic.contains(pt)
            assert par.param_of(pt) == u
        inf = P1Point.infinity(F13)
        assert par.param_of(par.point_at(inf)) == inf


def test_bezout_sum_is_four(F7):
    rng = random.Random(23)
    for _ in range(50):
        c, d = random_smooth_pair(F7, rng)
        pts = intersect_conics(c, d, seed=rng.randrange(100))
        assert sum(m for _, m in pts) == 4
        for p, _ in pts:
            assert c.lift(p.field).contains(p)
            assert d.lift(p.field).contains(p)


def test_classification_table(F13):
    one, zero = F13.one, F13.zero
    assert classify_normalized(F13(3), F13(1), F13(5)) == (2, 1, 1)  # delta=9-4*1*(-4)=25
    # delta = 0: t=4, a=1, b=5 gives 16 - 4*(-4) = 32 = 6; pick t with t^2=4a(1-b)
    t = (F13(4) * one * (one - F13(5))).sqrt()
    assert t is not None
    assert classify_normalized(t, one, F13(5)) == (2, 2)
    assert classify_normalized(F13(2), F13(7), one) == (3, 1)
    assert classify_normalized(zero, F13(4), one) == (4,)
    with pytest.raises(DegenerateInputError):
        classify_normalized(zero, zero, one)


def test_classify_matches_intersections(F11):
    rng = random.Random(29)
    for _ in range(40):
        c, d = random_smooth_pair(F11, rng)
        mults = classify(c, d, seed=rng.randrange(100))
        pts = intersect_conics(c, d, seed=rng.randrange(100))
        assert mults == tuple(sorted((m for _, m in pts), reverse=True))


def test_normalize_tangent_pair_round_trip(F13):
    rng = random.Random(31)
    done = 0
    while done < 15:
        c, d = random_smooth_pair(F13, rng)
        if multiplicity_structure(c, d)[0] < 2:
            continue
        c_l, d_l, pts, _ = tangency_data(c, d)
        norm = normalize_tangent_pair(c_l, d_l, pts[0])
        nc, nd = norm.conics()
        m = norm.transform
        assert m(c_l) == nc and m(d_l) == nd
        # the tangency point goes to the base point of the normal form
        assert m(pts[0]) == ProjPoint(nc.field, [0, 0, 1])
        done += 1


def test_normal_form_self_consistency(F7):
    for t, a, b in [(1, 2, 3), (0, 1, 1), (2, 0, 1), (3, 3, 5)]:
        c = normal_form_conic(F7(t), F7(a), F7(b))
        d = Conic(F7, [1, 0, 0, 0, 0, -1])
        if not c.is_smooth() or c == d:
            continue
        p = ProjPoint(F7, [0, 0, 1])
        norm = normalize_tangent_pair(c, d, p)
        assert (norm.t, norm.a, norm.b) == (F7(t), F7(a), F7(b))
        assert norm.transform.is_identity()


def test_tangency_points_over_q(Q):
    # concentric circles x^2 + y^2 = r z^2 meet only at the circular points,
    # each with multiplicity two
    c = Conic(Q, [1, 1, -4, 0, 0, 0])
    d = Conic(Q, [1, 1, -1, 0, 0, 0])
    assert multiplicity_structure(c, d) == (2, 2)
    pts = tangency_points(c, d)
    assert len(pts) == 2
    for p in pts:
        x, y, z = p.coords
        assert z.is_zero() and (x * x + y * y).is_zero()


def test_transform_group_operations(F11):
    m = ProjTransform(F11, [[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    assert m.compose(m.inverse()).is_identity()
    conic = Conic(F11, [0, 0, -1, 1, 0, 0])
    moved = m(conic)
    assert m.inverse()(moved) == conic
    p = find_point(conic, 4)
    assert moved.contains(m(p))
