"""A wedge against a line: the Friedrichs cosine is not preserved by passing
to dual/polar and orthogonal complement.

K = {x2 >= x1 >= 0} and M is the horizontal axis.  c(K, M) = 1/sqrt 2, but
the polar of K meets the vertical axis in a ray, and once that common ray is
removed nothing is left at an angle: c(K°, M^perp) = 0.  The inequality
``c(K1, K2) <= c(K1 dual, K2 polar)`` therefore needs a hypothesis, and the
suite's report shows which one fails.
"""

from coneangles import (
    cone_from_generators,
    cos_dixmier_exact,
    cos_friedrichs,
    dual,
    intersect,
    orthogonal_complement,
    polar,
    subspace,
)
from coneangles.theorems import check_theorem_cEQ

k = cone_from_generators([[0, 1], [1, 1]])
m = subspace([[1, 0]])
mp = orthogonal_complement(m)

rows = [
    ("c(K dual, M perp)", cos_friedrichs(dual(k), mp).cosine),
    ("c(K polar, M perp)", cos_friedrichs(polar(k), mp).cosine),
    ("c0(K, M)", cos_dixmier_exact(k, m).cosine),
    ("c(K, M)", cos_friedrichs(k, m).cosine),
    ("c0(K dual, M perp)", cos_dixmier_exact(dual(k), mp).cosine),
    ("c0(K polar, M perp)", cos_dixmier_exact(polar(k), mp).cosine),
]
for name, v in rows:
    print(f"{name:22s} {v:.12f}")

ray = intersect(polar(k), mp)
print()
print("K polar ∩ M perp is generated by", ray.generators.tolist())
print("its polar is generated by", polar(ray).generators.tolist())

rep = check_theorem_cEQ(m, k)
print()
print("hypotheses of the conical Solmon inequality for (M, K):")
for name, holds in rep.hypotheses:
    print(f"  {'yes' if holds else 'NO ':3s}  {name}")
print("conclusion:", "not applicable" if rep.conclusion is None else rep.conclusion)
