"""
Signed generating polynomials over a cyclotomic field
=====================================================

With xi a primitive M-th root of unity, G_p(z) = sum_{m < M^(p+1)} xi^B(m) z^m.
Whenever some prime of M does not divide N, (1 - z)^(p+1) divides G_p, and the
quotient F_p has coefficients beta_k with closed-form moments.
"""

from shiftdigits import identities as ids
from shiftdigits.cyclotomic import xi_power

# arithmetic in Q(xi_M) is exact: here xi is a primitive 4th root of unity
xi = xi_power(4, 1)
print("xi^2 =", xi * xi, "  1/(1 - xi) =", (1 - xi).inverse())

G = ids.build_G(1, 3, 2)
print("G_1 for M=3, N=2:", G)
print("multiplicity of the root z = 1:", G.root_multiplicity_at_one())
print("same polynomial from the digit-wise product:", G == ids.build_G(1, 3, 2, form="product"))

b = ids.beta(1, 3, 2)
print("beta coefficients:", [str(c) for c in b.coeffs])
print("beta via the convolution formula agrees:", b.poly == ids.beta_by_convolution(1, 3, 2).poly)

# the moments of beta match their closed forms; a mismatch would raise
print("sum beta_k   =", ids.moment0(1, 3, 2))
print("sum k beta_k =", ids.moment1(1, 3, 2))

# weighted power sums vanish up to degree p
print([str(ids.power_sum_S(k, 2, 5, 2)) for k in range(4)])
