"""Angles between the quadrant and a halfplane, and between their polars.

The quadrant K1 = R^2_+ and the halfplane K2 = {x1 + x2 <= 0} meet only at
the origin, so the Dixmier and Friedrichs cosines agree (1/sqrt 2).  Passing
to polars changes the picture: the polar of K1 and the dual of K2 share a
ray, so their Dixmier cosine jumps to 1 while the Friedrichs cosine, which
ignores the shared part, drops to 0.
"""

from coneangles import (
    cone_from_generators,
    cone_from_halfspaces,
    cone_sum,
    cos_dixmier_exact,
    cos_friedrichs,
    difference,
    dual,
    equals,
    intersect,
    negate,
    polar,
)

k1 = cone_from_generators([[1, 0], [0, 1]])
k2 = cone_from_halfspaces([[1, 1]], dim=2)

print("K1 generators:", k1.generators.tolist())
print("K2 generators:", k2.generators.tolist())
print("K2 polar is the ray through", polar(k2).generators.tolist())
print()
print("K1 ∩ K2 = {0}:", intersect(k1, k2).is_zero)
print("K1 + K2 = R^2:", cone_sum(k1, k2).is_full)
print("K1 - K2 = -K2:", equals(difference(k1, k2), negate(k2)))
print()

pairs = {
    "(K1, K2)": (k1, k2),
    "(K1 polar, K2 polar)": (polar(k1), polar(k2)),
    "(K1 dual, K2 dual)": (dual(k1), dual(k2)),
    "(K1 polar, K2 dual)": (polar(k1), dual(k2)),
}
print(f"{'pair':24s} {'c0':>10s} {'c':>10s}")
for name, (a, b) in pairs.items():
    r0 = cos_dixmier_exact(a, b)
    print(f"{name:24s} {r0.cosine:10.6f} {cos_friedrichs(a, b).cosine:10.6f}")

r = cos_dixmier_exact(k1, k2)
print()
print("certificate for c0(K1, K2): x =", r.x_star.round(6).tolist(), " y =", r.y_star.round(6).tolist())
print("<x, y> =", float(r.x_star @ r.y_star))
