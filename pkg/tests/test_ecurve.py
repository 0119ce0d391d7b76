import random

import pytest

from porism.ecurve import (SHAPE_CUSP, SHAPE_NODE, SHAPE_SMOOTH,
                           SHAPE_SPLIT_DOUBLE, SHAPE_SPLIT_TRANSVERSAL,
                           BiquadraticForm, build_E, build_E_normalized,
                           is_reducible, nu, nu_inverse, params_to_state,
                           shape, sigma, singular_points, state_to_params,
                           tau)
from porism.errors import NotOnConicError
from porism.process import PonceletConfig, sample_starts, start, step
from porism.projective import Conic, P1Point, normal_form_conic

from conftest import random_smooth_pair


def normal_pair(field, t, a, b):
    outer = normal_form_conic(field(t), field(a), field(b))
    inner = Conic(field, [1, 0, 0, 0, 0, -1])
    return outer, inner


def all_points(H):
    field = H.field
    p1 = [P1Point.infinity(field)] + [P1Point.affine(e)
                                      for e in field.elements()]
    return [(u, v) for u in p1 for v in p1 if H.contains(u, v)]


def test_normalized_form_coefficients(F13):
    # the incidence form of the normal pair, written out by expanding
    # b u^2 w'^2 - 2b u v w w' + (w^2 + t u w + a u^2) v^2 in the bidegree grid
    for t, a, b in [(0, 1, 1), (1, 0, 1), (0, 0, 2), (2, 3, 5)]:
        H = build_E_normalized(F13(t), F13(a), F13(b))
        expected = ((F13(0), F13(0), F13(1)),
                    (F13(0), F13(-2) * F13(b), F13(t)),
                    (F13(b), F13(0), F13(a)))
        assert H.h == expected


def test_contains_matches_geometry(F11):
    rng = random.Random(1)
    for _ in range(10):
        outer, inner = random_smooth_pair(F11, rng)
        H = build_E(outer, inner)
        from porism.projective import tangent_at
        for u, v in all_points(H):
            c = H.outer_par.point_at(u)
            d = H.inner_par.point_at(v)
            assert tangent_at(inner, d).contains(c)


def test_sigma_tau_are_involutions(F13):
    rng = random.Random(2)
    count = 0
    for _ in range(8):
        outer, inner = random_smooth_pair(F13, rng)
        H = build_E(outer, inner)
        for p in all_points(H):
            assert sigma(H, sigma(H, p)) == p
            assert tau(H, tau(H, p)) == p
            assert nu_inverse(H, nu(H, p)) == p
            count += 1
    assert count > 50


def test_nu_matches_process_step(F11):
    rng = random.Random(3)
    checked = 0
    while checked < 40:
        outer, inner = random_smooth_pair(F11, rng)
        cfg = PonceletConfig(outer, inner)
        c1 = sample_starts(cfg, 1, rng.randrange(50))[0]
        cfg2, st, lifted = start(cfg, c1)
        if lifted:
            continue
        H = build_E(outer, inner)
        p = state_to_params(H, st)
        for _ in range(4):
            st = step(cfg2, st)
            p = nu(H, p)
            assert params_to_state(H, p).same_pair(st)
        checked += 1


def test_maps_reject_points_off_curve(F7):
    H = build_E_normalized(F7(1), F7(2), F7(3))
    off = next((u, v) for u in [P1Point.affine(F7(k)) for k in range(7)]
               for v in [P1Point.affine(F7(k)) for k in range(7)]
               if not H.contains(u, v))
    with pytest.raises(NotOnConicError):
        nu(H, off)


def test_singular_points_are_tangencies(F13):
    # tangency parameter of the normal pair is u = 0, v = 0 in both charts
    for t, a, b in [(0, 0, 2), (3, 1, 1), (0, 2, 1)]:
        H = build_E_normalized(F13(t), F13(a), F13(b))
        sing = singular_points(H)
        zero = P1Point.affine(F13(0))
        assert (zero, zero) in [(u, v) for u, v in sing]
        for u, v in sing:
            assert H.lift(u.field).is_singular_at(u, v)


def test_singular_points_fixed_by_nu(F13):
    H = build_E_normalized(F13(3), F13(1), F13(1))  # type (3, 1)
    for u, v in singular_points(H):
        K = H.lift(u.field)
        assert nu(K, (u, v)) == (u, v)


def test_reducibility_table(F7):
    # split without lifting: t = 0, a = 0, b = 2 (delta = 4b^2 square)
    H = build_E_normalized(F7(0), F7(0), F7(2))
    split = is_reducible(H)
    assert split is not None and split[2] is False
    f1, f2, _ = split
    assert BiquadraticForm(H.field, f1.product(f2)) == H
    # irreducible examples
    assert is_reducible(build_E_normalized(F7(0), F7(1), F7(3))) is None


def test_reducible_split_may_need_extension(F7):
    # type (4) with -a a non-square forces a quadratic lift of the factors
    a = next(x for x in range(1, 7) if (-F7(x)).sqrt() is None)
    H = build_E_normalized(F7(0), F7(a), F7(1))
    split = is_reducible(H)
    assert split is not None and split[2] is True
    f1, f2, _ = split
    big = f1.field
    assert BiquadraticForm(big, f1.product(f2)) == H.lift(big)


def test_shape_tags(F13):
    # (2,1,1) -> node, (3,1) -> cusp, (2,2) and (4) -> split
    cases = []
    cases.append(((3, 1, 5), SHAPE_NODE))        # delta = 9 + 16 nonzero
    cases.append(((2, 7, 1), SHAPE_CUSP))        # b = 1, t nonzero
    for (t, a, b), tag in cases:
        outer, inner = normal_pair(F13, t, a, b)
        assert shape(outer, inner).tag == tag
    outer, inner = normal_pair(F13, 0, 5, 1)
    assert shape(outer, inner).tag == SHAPE_SPLIT_DOUBLE
    # t = 3, a = 1, b = 2: t^2 = 9 = 4a(1-b) mod 13, so delta = 0
    assert (F13(3) ** 2 - F13(4) * (F13.one - F13(2))).is_zero()
    outer, inner = normal_pair(F13, 3, 1, 2)
    assert shape(outer, inner).tag == SHAPE_SPLIT_TRANSVERSAL


def test_smooth_pairs_have_smooth_curve(F11):
    rng = random.Random(8)
    seen_smooth = 0
    for _ in range(20):
        outer, inner = random_smooth_pair(F11, rng)
        cfg_type = PonceletConfig(outer, inner).intersection_type
        sh = shape(outer, inner)
        if cfg_type == (1, 1, 1, 1):
            assert sh.tag == SHAPE_SMOOTH
            assert sh.singular == []
            seen_smooth += 1
    assert seen_smooth >= 5


def test_split_components_swapped_by_involutions(F7):
    H = build_E_normalized(F7(0), F7(0), F7(2))
    f1, f2, _ = is_reducible(H)
    for p in all_points(H):
        on1, on2 = f1.contains(*p), f2.contains(*p)
        assert on1 or on2
        if on1 != on2:  # away from the component intersection
            q = sigma(H, p)
            assert f1.contains(*q) == on2 and f2.contains(*q) == on1


def test_nu_has_period_p_in_osculating_case(F5):
    H = build_E_normalized(F5(0), F5(1), F5(1))  # type (4) over F5
    sing = set(singular_points(H))
    for p in all_points(H):
        if p in sing:
            continue
        q = p
        for _ in range(5):
            q = nu(H, q)
        assert q == p
