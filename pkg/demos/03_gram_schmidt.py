"""
Gram-Schmidt with exact rationals
=================================
"""

from hyperspaces import dot_product, gram_schmidt, is_orthogonal_set, trivial_space
from hyperspaces.inner import fourier_coefficients
from hyperspaces.setalg import format_element as fmt

W = trivial_space(3)
ip = dot_product()
S = [(1, 1, 0), (1, 0, 1), (0, 1, 1)]

result = gram_schmidt(W, ip, S)
for step in result.log:
    print(step.index, fmt(step.source), "->", fmt(step.chosen))

out = result.vectors
print("orthogonal:", bool(is_orthogonal_set(ip, out)))

# %%
# Any vector is rebuilt from its Fourier coefficients against the output.
alpha = (2, -1, 5)
c = fourier_coefficients(ip, alpha, out)
print("coefficients of", alpha, "=", fmt(c))
print(fmt(tuple(sum(ci * v[i] for ci, v in zip(c, out)) for i in range(3))))
