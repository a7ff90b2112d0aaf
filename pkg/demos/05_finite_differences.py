"""
Weighted sums as finite differences
===================================

For a polynomial f, the sum of xi^B(n) f(x + n y) over n < M^(p+1) equals
(-1)^(p+1) times the beta-weighted sum of the (p+1)-fold difference of f.
Both sides are expanded symbolically and compared exactly.
"""

import random

from shiftdigits import identities as ids
from shiftdigits.polyring import MultiPoly, finite_difference

u, y = MultiPoly.vars("u", "y")
print("second difference of u^3 with step y:", finite_difference(u**3, "u", y, 2))

print(ids.verify_fd_single(1, 3, 2, u**5).to_json())

# several summation indices at once, each with its own step y_j
print(ids.verify_fd_multi((0, 1, 2), 2, 3, u**6 + 2 * u**3).to_json())

# random test polynomials with rational coefficients
rng = random.Random(7)
for _ in range(3):
    f = ids.random_polynomial(4, rng)
    print(f, "->", ids.verify_fd_single(1, 5, 2, f).verified)

# the same check by exact evaluation on an integer grid
print("grid mode:", ids.verify_fd_single(1, 3, 2, u**4, mode="sampled").verified)
