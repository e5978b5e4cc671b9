"""
A set-valued scalar action on Q^2
=================================

The cone action sends a * v to {a v, 0}.  It is a perfectly good
hypervector space, but the dot product is not homogeneous on it.
"""

from fractions import Fraction

from hyperspaces import check_hvs_axioms, cone_space, dot_product
from hyperspaces.hyperstructures import evaluate
from hyperspaces.inner import check_inner_axioms

W = cone_space(2)
ip = dot_product()
scalars = [Fraction(x) for x in (0, 1, -1, 2)]
vectors = [(0, 0), (1, 0), (-1, 0), (0, 1), (1, 1)]

print("2 * (1, 1) =", W.star(2, (1, 1)))
print("space axioms:", check_hvs_axioms(W, scalars, vectors) or "all hold")

# %%
# sup over 1 * (1, 0) of <x, (-1, 0)> is 0 because theta is in the set,
# while 1 <(1, 0), (-1, 0)> is -1.
holds, left, right = evaluate((W, ip), "IP.homogeneous", 1, (1, 0), (-1, 0))
print("homogeneous at the witness:", holds, left, right)
print(len(check_inner_axioms(W, ip, scalars, vectors)), "inner-product violations on the grid")
