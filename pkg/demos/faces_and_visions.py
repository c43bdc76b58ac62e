"""Faces, visions, and the classification of boundary points.

The face of a functional on a set collects the members where it attains
its supremum.  Visions invert that: the vision of a member y is every
functional whose face contains y — equivalently, through the duality
map, every point u with y in the face of J(u).  Fixed points of the
projections characterize both.

Run: python3 demos/faces_and_visions.py
"""

import math

from lpgeom import (
    Ball,
    LpSpace,
    Ray,
    Segment,
    classify_point,
    duality_map,
    face,
    fixed_point_check,
    solve_vi,
    vision_dual_member,
    vision_primal_member,
    window_functional,
)

S = LpSpace(3, 3.0)

# One ray, three functionals: the whole set, just the vertex, nothing.
ray = Ray(S.point([0, 0, 0]), S.point([25, 37, 77]))
for coords in ([0, 0, 0], [-1, -1, -1], [1, 1, 1]):
    psi = S.functional(coords)
    d = face(ray, psi)
    level = "unattained" if math.isinf(d.level) else d.level
    print(f"face of {coords}: kind={d.kind} level={level}")
print()

# Window functionals on unit-radius balls: at p = 1 the face is a slab
# of the sphere, at p > 1 it thins to a single point.
B1 = Ball(LpSpace(5, 1.0), 1.0)
psi1 = window_functional(B1.space, [1, 2])
d1 = face(B1, psi1, tol=1e-9)
print("p=1 ball, window {1,2}: kind =", d1.kind, " level =", d1.level)
print("  representative:", d1.representatives[0])

B3 = Ball(LpSpace(5, 3.0), 1.0)
psi3 = window_functional(B3.space, [1, 2])
d3 = face(B3, psi3, tol=1e-9)
print("p=3 ball, window {1,2}: kind =", d3.kind, " level =", d3.level)
print()

# Classification: a member is internal when no nonzero functional tops
# out there, cuticle when one does.  Ball interiors are internal, the
# sphere is cuticle; a segment in R^3 is all cuticle, even its middle.
ball = Ball(S, 2.0)
seg = Segment(S.point([3, -2, -1]), S.point([1, -3, 2]))
mid = 0.5 * S.point([3, -2, -1]) + 0.5 * S.point([1, -3, 2])
for name, C, pt in (
    ("ball center ", ball, S.point([0, 0, 0])),
    ("sphere point", ball, S.point([2, 0, 0])),
    ("seg endpoint", seg, S.point([3, -2, -1])),
    ("seg midpoint", seg, mid),
):
    c = classify_point(C, pt)
    print(f"{name}: {c.verdict} (method {c.method})")
print()

# Vision membership two ways: through a functional, or through a point
# and the duality map.  Both routes must agree.
y = S.point([3, -2, -1])
u = S.point([4.0, -1.5, -2.0])
print("u sees y (primal):", vision_primal_member(seg, y, u))
print("Ju sees y (dual): ", vision_dual_member(seg, y, duality_map(u)))
print()

# The fixed-point characterization ties it together: u sees y exactly
# when projecting u + y metrically, or Ju + Jy the generalized way,
# returns y itself.
rep = fixed_point_check(seg, u, y)
print("fixed-point check: face member =", rep.face_member,
      " metric eq =", rep.metric_fixed, " generalized eq =", rep.generalized_fixed,
      " agree =", rep.agree)

# And solve_vi hands back a certified face point for a functional.
sol = solve_vi(seg, S.functional([0.9, -0.2, -0.4]))
print("solve_vi point:", sol.point,
      " residuals:", sol.metric_residual, sol.generalized_residual)
