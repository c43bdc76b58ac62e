import math

import numpy as np
import pytest

from lpgeom import LpSpace, norm, pair, window_functional
from lpgeom.sets import (
    NONNEGATIVE,
    SIMPLEX,
    UNIT_INTERVAL,
    UNRESTRICTED,
    Ball,
    FinitelyGeneratedCone,
    Line,
    Polytope,
    Ray,
    Segment,
    Subspace,
)

import _oracles


@pytest.fixture
def l3():
    return LpSpace(3, 3.0)


def test_ray_contains(l3):
    ray = Ray(l3.zero(), l3.point([-25.0, -37.0, -77.0]))
    assert ray.contains(l3.point([-12.5, -18.5, -38.5]))
    assert ray.contains(ray.vertex)
    assert not ray.contains(l3.point([25.0, 37.0, 77.0]))
    assert not ray.contains(l3.point([-25.0, -37.0, 0.0]))


def test_ball_contains(l3):
    ball = Ball(l3, 1.0)
    assert not ball.contains(l3.point([1.0, 1.0, 1.0]))  # norm 3^(1/3) > 1
    assert ball.contains(l3.point([0.5, 0.5, 0.5]))
    assert ball.contains(l3.point([1.0, 0.0, 0.0]))


def test_cone_contains(l3):
    cone = FinitelyGeneratedCone(
        l3.zero(), [l3.point([1.0, 0.0, 0.0]), l3.point([0.0, 1.0, 0.0])]
    )
    assert cone.contains(l3.point([2.0, 3.0, 0.0]))
    assert not cone.contains(l3.point([1.0, 1.0, -0.1]))
    assert not cone.contains(l3.point([-1.0, 1.0, 0.0]))


def test_segment_line_subspace_distances(l3):
    a, b = l3.point([0.0, 0.0, 0.0]), l3.point([2.0, 0.0, 0.0])
    seg = Segment(a, b)
    assert seg.distance(l3.point([1.0, 1.0, 0.0])) == pytest.approx(1.0)
    assert seg.distance(l3.point([3.0, 0.0, 0.0])) == pytest.approx(1.0)
    line = Line(a, l3.point([1.0, 0.0, 0.0]))
    assert line.distance(l3.point([3.0, 0.0, 0.0])) == 0.0
    sub = Subspace(l3, [l3.point([1.0, 0.0, 0.0]), l3.point([0.0, 1.0, 0.0])])
    assert sub.distance(l3.point([1.0, 2.0, 3.0])) == pytest.approx(3.0)


def test_polytope_membership():
    space = LpSpace(2, 2.0)
    tri = Polytope([space.point([0, 0]), space.point([1, 0]), space.point([0, 1])])
    assert tri.contains(space.point([0.25, 0.25]))
    assert tri.contains(space.point([0.5, 0.5]))  # edge midpoint
    assert tri.contains(space.point([1.0, 0.0]))
    assert not tri.contains(space.point([0.6, 0.6]))
    assert not tri.contains(space.point([-0.1, 0.5]))


def test_validation_errors(l3):
    with pytest.raises(ValueError):
        Segment(l3.point([1, 1, 1]), l3.point([1, 1, 1]))
    with pytest.raises(ValueError):
        Ray(l3.zero(), l3.zero())
    with pytest.raises(ValueError):
        FinitelyGeneratedCone(l3.zero(), [l3.zero()])
    with pytest.raises(ValueError):
        Ball(l3, 0.0)
    with pytest.raises(ValueError):
        Subspace(l3, [l3.point([1, 0, 0]), l3.point([2, 0, 0])])
    with pytest.raises(ValueError):
        Polytope([])
    with pytest.raises(ValueError):
        Segment(l3.point([0, 0, 0]), LpSpace(3, 2.0).point([1, 1, 1]))


def test_ray_support(l3):
    u = l3.point([25.0, 37.0, 77.0])
    ray = Ray(l3.zero(), u)
    psi = l3.functional([-9.0, 4.0, 1.0])  # annihilates u
    assert ray.support(psi) == 0.0
    assert ray.support(l3.functional([1.0, 1.0, 1.0])) == math.inf
    assert ray.support(l3.functional([-1.0, -1.0, -1.0])) == 0.0


def test_ball_support_window(l3):
    # p = 1 with window functionals: level is the radius times the sup norm
    space = LpSpace(5, 1.0)
    ball = Ball(space, 1.0)
    psi = window_functional(space, {1, 2})
    assert ball.support(psi) == pytest.approx(1.0)
    ball3 = Ball(LpSpace(5, 3.0), 1.0)
    psi3 = window_functional(LpSpace(5, 3.0), {1, 2})
    assert ball3.support(psi3) == pytest.approx(2.0 ** (2.0 / 3.0))


def test_support_sublinearity():
    rng = np.random.default_rng(5)
    space = LpSpace(3, 3.0, [1.0, 2.0, 0.5])
    sets = [
        Ball(space, 1.5),
        Segment(space.point([0, 0, 0]), space.point([1, 2, 3])),
        Polytope([space.point(rng.standard_normal(3)) for _ in range(4)]),
    ]
    for C in sets:
        for _ in range(100):
            p1 = space.functional(rng.standard_normal(3))
            p2 = space.functional(rng.standard_normal(3))
            s12 = C.support(p1 + p2)
            assert s12 <= C.support(p1) + C.support(p2) + 1e-9
        for _ in range(20):
            p1 = space.functional(rng.standard_normal(3))
            t = float(10.0 ** rng.uniform(-2, 2))
            assert C.support(t * p1) == pytest.approx(t * C.support(p1), rel=1e-12)


def test_support_cone_tolerance(l3):
    cone = FinitelyGeneratedCone(l3.zero(), [l3.point([1.0, 0.0, 0.0])])
    psi = l3.functional([1e-12, -1.0, 0.0])
    assert cone.support(psi) == math.inf
    assert cone.support(psi, tol=1e-9) == 0.0


def test_samples_are_members():
    rng = np.random.default_rng(17)
    space = LpSpace(3, 1.5, [1.0, 0.5, 2.0])
    sets = [
        Segment(space.point([0, 0, 0]), space.point([1, -1, 2])),
        Ray(space.point([1, 0, 0]), space.point([0, 1, 1])),
        Line(space.point([1, 1, 1]), space.point([1, -2, 0])),
        FinitelyGeneratedCone(
            space.zero(), [space.point(rng.standard_normal(3)) for _ in range(3)]
        ),
        Polytope([space.point(rng.standard_normal(3)) for _ in range(4)]),
        Ball(space, 2.0),
        Subspace(space, [space.point([1, 0, 0]), space.point([0, 1, 1])]),
    ]
    for C in sets:
        for x in C.sample(50, seed=99):
            assert C.contains(x, tol=1e-9), f"{C!r} sample escaped"


def test_sampling_is_deterministic():
    space = LpSpace(3, 3.0)
    ball = Ball(space, 1.0)
    one = [x.tolist() for x in ball.sample(10, seed=4)]
    two = [x.tolist() for x in ball.sample(10, seed=4)]
    assert one == two


def test_parameterize_tags(l3):
    seg = Segment(l3.point([0, 0, 0]), l3.point([1, 0, 0]))
    assert seg.parameterize().feasible == UNIT_INTERVAL
    ray = Ray(l3.zero(), l3.point([1, 1, 1]))
    assert ray.parameterize().feasible == NONNEGATIVE
    cone = FinitelyGeneratedCone(l3.zero(), [l3.point([1, 0, 0]), l3.point([0, 1, 0])])
    assert cone.parameterize().feasible == NONNEGATIVE
    poly = Polytope([l3.point([1, 0, 0]), l3.point([0, 1, 0])])
    assert poly.parameterize().feasible == SIMPLEX
    line = Line(l3.point([0, 0, 0]), l3.point([1, 0, 0]))
    assert line.parameterize().feasible == UNRESTRICTED
    sub = Subspace(l3, [l3.point([1, 0, 0])])
    assert sub.parameterize().feasible == UNRESTRICTED
    with pytest.raises(TypeError):
        Ball(l3, 1.0).parameterize()


def test_parameterization_reconstructs_members(l3):
    cone = FinitelyGeneratedCone(l3.zero(), [l3.point([1, 0, 1]), l3.point([0, 1, 1])])
    pm = cone.parameterize()
    D = pm.direction_matrix()
    pt = l3.point(pm.base.coords + D @ np.array([0.5, 2.0]))
    assert cone.contains(pt)


def test_pointedness(l3):
    orthant = FinitelyGeneratedCone(
        l3.zero(), [l3.point([1, 0, 0]), l3.point([0, 1, 0]), l3.point([0, 0, 1])]
    )
    assert orthant.is_pointed()
    flat = FinitelyGeneratedCone(
        l3.zero(), [l3.point([1, 0, 0]), l3.point([-1, 0, 0]), l3.point([0, 1, 0])]
    )
    assert not flat.is_pointed()
    assert Ray(l3.zero(), l3.point([1, 2, 3])).is_pointed()


def test_trivial_subspace(l3):
    sub = Subspace(l3)
    assert sub.dim() == 0
    assert sub.contains(l3.zero())
    assert not sub.contains(l3.point([0.1, 0, 0]))
    assert sub.support(l3.functional([5, 5, 5])) == 0.0
    assert all(np.all(s.coords == 0.0) for s in sub.sample(3, seed=0))
