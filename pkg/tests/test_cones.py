import numpy as np
import pytest

from lpgeom.cones import (
    ConeWithVertex,
    find_double_dual_certificate,
    generalized_double_dual_member,
    hilbert_identity_violation,
    intersection_dual_check,
    intersection_dual_check_family,
    member_generalized_dual,
    member_metric_dual,
    metric_double_dual_violation,
    probe_nonconvexity_metric_dual,
)
from lpgeom.sets import FinitelyGeneratedCone, Ray, Segment
from lpgeom.spaces import LpSpace, duality_map, pair


def _canonical_ray(p):
    S = LpSpace(3, p)
    return S, Ray(S.zero(), S.point([-25.0, -37.0, -77.0]))


def test_metric_dual_membership_depends_on_exponent():
    S3, K3 = _canonical_ray(3.0)
    x = S3.point([3.0, -2.0, -1.0])
    y = S3.point([1.0, -3.0, 2.0])
    assert member_metric_dual(K3, x)
    assert member_metric_dual(K3, y)

    S2, K2 = _canonical_ray(2.0)
    # at exponent 2 the pairing is the plain inner product: <x, u> = 76 > 0
    assert not member_metric_dual(K2, S2.point([3.0, -2.0, -1.0]))
    assert member_metric_dual(K2, S2.point([1.0, -3.0, 2.0]))


def test_metric_dual_cone_is_not_convex_at_p_three():
    _, K = _canonical_ray(3.0)
    wit = probe_nonconvexity_metric_dual(K, seed=11)
    assert wit is not None
    assert wit.kind == "convex-combination-escape"
    assert wit.revalidate()
    # the escape amount for the known pair is 14 * 4^(1/3)
    assert abs(wit.value - 14.0 * 4.0 ** (1.0 / 3.0)) <= 1e-9
    h = wit.data["h"]
    assert np.allclose(h.coords, [7.0 / 3.0, -7.0 / 3.0, 0.0], atol=1e-12)


def test_metric_dual_cone_convex_at_p_two():
    _, K = _canonical_ray(2.0)
    assert probe_nonconvexity_metric_dual(K, seed=13, trials=300) is None


def test_metric_double_dual_gap_at_p_three():
    S, K = _canonical_ray(3.0)
    wit = metric_double_dual_violation(K, seed=12)
    assert wit is not None and wit.kind == "double-dual-gap"
    assert wit.revalidate()
    z, x = wit.data["z"], wit.data["x"]
    assert abs(wit.value - pair(duality_map(z), x)) <= 1e-12 * (1.0 + wit.value)
    # the known pair gives <J u, -x> strictly negative
    u = S.point([-25.0, -37.0, -77.0])
    xx = S.point([3.0, -2.0, -1.0])
    assert pair(duality_map(u), -1.0 * xx) < -1e-6


def test_metric_double_dual_gap_absent_at_p_two():
    _, K = _canonical_ray(2.0)
    assert metric_double_dual_violation(K, seed=14, trials=300) is None


def test_double_dual_checks_require_origin_vertex():
    S = LpSpace(3, 3.0)
    K = Ray(S.point([1.0, 0.0, 0.0]), S.point([0.0, 1.0, 0.0]))
    with pytest.raises(ValueError):
        metric_double_dual_violation(K)
    with pytest.raises(ValueError):
        hilbert_identity_violation(K, S.point([1.0, 1.0, 1.0]))


def test_generalized_double_dual_is_involutive():
    rng = np.random.default_rng(31)
    for p in (1.5, 3.0):
        S = LpSpace(3, p, weights=rng.uniform(0.4, 2.0, size=3))
        v = S.point(rng.normal(size=3))
        gens = [S.point([1.0, 0.0, 0.3]), S.point([0.0, 1.0, 0.1]), S.point([0.2, 0.1, 1.0])]
        K = FinitelyGeneratedCone(v, gens)
        for _ in range(40):
            coef = rng.uniform(0.0, 3.0, size=3)
            inside = S.point(v.coords + sum(c * g.coords for c, g in zip(coef, gens)))
            assert generalized_double_dual_member(K, inside)
            assert find_double_dual_certificate(K, inside) is None
        for _ in range(40):
            cand = S.point(v.coords - rng.uniform(0.5, 3.0, size=3))
            if K.contains(cand):
                continue
            assert not generalized_double_dual_member(K, cand)
            cert = find_double_dual_certificate(K, cand)
            assert cert is not None and cert.revalidate()
            phi = cert.data["functional"]
            # the certificate separates: nonpositive on every generator,
            # strictly positive on the offset of the rejected point
            assert max(pair(phi, g) for g in gens) <= 1e-9
            assert pair(phi, cand - v) > 0.0


def test_generalized_dual_membership_translates_with_vertex():
    S = LpSpace(3, 3.0, weights=[0.8, 1.0, 1.3])
    v = S.point([0.5, -1.0, 2.0])
    K = FinitelyGeneratedCone(v, [S.point([1.0, 0.0, 0.0]), S.point([0.0, 1.0, 0.5])])
    jv = duality_map(v)
    assert member_generalized_dual(K, jv)
    # moving against a generator leaves the dual cone
    bad = jv + S.functional([1.0, 0.0, 0.0])
    assert not member_generalized_dual(K, bad)
    good = jv - S.functional([1.0, 1.0, 0.0])
    assert member_generalized_dual(K, good)


def test_intersection_dual_identity_pairs():
    for p, w in ((2.0, None), (3.0, [0.5, 1.2, 2.0])):
        S = LpSpace(3, p, weights=w)
        A = FinitelyGeneratedCone(
            S.zero(), [S.point([1.0, 0, 0]), S.point([0, 1.0, 0]), S.point([0, 0, 1.0])]
        )
        B = FinitelyGeneratedCone(
            S.zero(), [S.point([1.0, 1.0, 0]), S.point([0, 1.0, 0]), S.point([0, 0, 1.0])]
        )
        rep = intersection_dual_check(A, B, seed=9)
        assert rep.ok
        assert rep.forward_margin <= 1e-8
        assert rep.backward_residual <= 1e-8
        assert len(rep.intersection_generators) >= 2
        assert rep.sampled == 50


def test_intersection_dual_identity_plane_pair():
    S = LpSpace(2, 3.0, weights=[0.9, 1.4])
    A = FinitelyGeneratedCone(S.zero(), [S.point([1.0, 0.0]), S.point([1.0, 1.0])])
    B = FinitelyGeneratedCone(S.zero(), [S.point([1.0, 0.5]), S.point([0.0, 1.0])])
    rep = intersection_dual_check(A, B, seed=21)
    assert rep.ok


def test_intersection_dual_identity_family_of_three():
    S = LpSpace(3, 3.0, weights=[0.5, 1.2, 2.0])
    A = FinitelyGeneratedCone(S.zero(), [S.point([1.0, 0, 0]), S.point([0, 1.0, 0]), S.point([0, 0, 1.0])])
    B = FinitelyGeneratedCone(S.zero(), [S.point([1.0, 1.0, 0]), S.point([0, 1.0, 0]), S.point([0, 0, 1.0])])
    C = FinitelyGeneratedCone(S.zero(), [S.point([1.0, 0.2, 0]), S.point([0, 1.0, 0.3]), S.point([0.1, 0, 1.0])])
    rep = intersection_dual_check_family([A, B, C], seed=10)
    assert rep.ok
    with pytest.raises(ValueError):
        intersection_dual_check_family([A])


def test_hilbert_identity_defect_by_exponent():
    for p in (1.5, 3.0):
        S, K = _canonical_ray(p)
        w = S.point([-28.0, -35.0, -76.0])
        assert abs(hilbert_identity_violation(K, w)) > 1e-3
    S2, K2 = _canonical_ray(2.0)
    assert abs(hilbert_identity_violation(K2, S2.point([-28.0, -35.0, -76.0]))) <= 1e-8


def test_cone_view_coercion():
    S = LpSpace(2, 2.0)
    r = Ray(S.zero(), S.point([1.0, 0.0]))
    view = ConeWithVertex.of(r)
    assert len(view.generators) == 1
    assert view.to_set().contains(S.point([3.0, 0.0]))
    assert ConeWithVertex.of(view) is view
    with pytest.raises(TypeError):
        ConeWithVertex.of(Segment(S.point([0.0, 0.0]), S.point([1.0, 0.0])))
