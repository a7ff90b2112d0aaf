"""
Closed forms for weighted power sums
====================================

Three exact evaluations, all checked symbolically:
the sum of (x + sum_j n_j y_j)^D is free of x; the sum of
(B(n) x + n y)^(p+1) factors into linear forms; and the multi-index
version of the latter factors the same way.
"""

from shiftdigits import identities as ids

print("S_{1,2} for M=2, N=1:", ids.S_pl(1, 2, 2, 1))
print("S_{1,l} for l <= 1 vanish:", [ids.S_pl(1, l, 3, 2).is_zero() for l in range(2)])
print(ids.verify_S_closed_form(2, 3, 2).to_json())

rep = ids.verify_first_closed_form((0, 1), 3, 2)
print("first closed form:", rep.verified, "x-free:", rep.details["x_free"])
print("  value:", ids.first_closed_form_rhs((0, 1), 3, 2))

rep = ids.verify_second_closed_form((1, 0), 2, 3)
print("second closed form:", rep.verified, "only k = p1 + 1 survives:", rep.details["collapse_ok"])

print("n^a B(n)^b weighted sums vanish for a + b < p:",
      all(ids.verify_poly_vanishing(3, 5, 2, a, b).verified for a in range(3) for b in range(3 - a)))
