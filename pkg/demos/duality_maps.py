"""Duality maps in weighted l_p: what J does and which identities survive.

Run: python3 demos/duality_maps.py
"""

import numpy as np

from lpgeom import LpSpace, duality_map, duality_map_inv, lyapunov, norm, pair

S = LpSpace(3, 3.0)
x = S.point([3.0, -2.0, -1.0])
psi = duality_map(x)

print("x =", x)
print("J x =", psi)
print()

# The two defining identities: <Jx, x> = ||x||^2 and ||Jx||_* = ||x||.
print("pairing <Jx, x> =", pair(psi, x), " vs ||x||^2 =", norm(x) ** 2)
print("dual norm ||Jx|| =", norm(psi), " vs ||x|| =", norm(x))
print()

# J inverts exactly through the conjugate exponent.
back = duality_map_inv(psi)
print("J* J x =", back, " drift =", float(np.max(np.abs(back.coords - x.coords))))
print()

# Weights change the map coordinatewise but not the identities.
W = LpSpace(3, 1.5, weights=[0.5, 2.0, 1.25])
y = W.point([1.0, -0.7, 0.4])
jy = duality_map(y)
print("weighted space, p = 1.5:")
print("  <Jy, y> - ||y||^2 =", pair(jy, y) - norm(y) ** 2)
print("  ||Jy|| - ||y||    =", norm(jy) - norm(y))
print()

# The Lyapunov functional V(psi, x) vanishes exactly when psi = Jx,
# and is sandwiched between the squared norm gap and sum.
z = W.point([0.3, 0.1, -0.2])
print("V(Jy, y) =", lyapunov(jy, y))
print("V(Jy, z) =", lyapunov(jy, z), " bounds:",
      (norm(jy) - norm(z)) ** 2, "..", (norm(jy) + norm(z)) ** 2)
