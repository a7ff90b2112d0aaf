"""
When is b(n) periodic, and with what period?
============================================

b(n) = B_{M,N}(n) mod M is periodic exactly when every prime dividing M
also divides N.  For prime powers M = p^a, N = p^b the minimal period has
a closed form; for general M a product formula is conjectured when each
local exponent ratio ceil(a_p / b_p) is at most 2.
"""

from shiftdigits.periodicity import (
    analyze,
    conjecture_formula,
    conjecture_scan,
    is_ultimately_periodic,
    minimal_period_bruteforce,
    necessity_probe,
    period_bounds,
)

for M, N in [(4, 2), (2, 1), (6, 4), (12, 6)]:
    print(f"(M, N) = ({M}, {N}): periodic = {is_ultimately_periodic(M, N)}")

# (4, 2): the sequence 0 1 2 3 2 3 0 1 repeats with period 8, inside the bounds [4, 16]
rep = analyze(4, 2)
print(rep.to_json())
print("bounds for (4, 2):", period_bounds(4, 2))

# a non-periodic pair: a long window finds no repeat
print("probe on (6, 4) finds a period?", necessity_probe(6, 4))

# prime powers: the formula and brute force agree, even for a period of 2**31
print("minimal period of (64, 2):", minimal_period_bruteforce(64, 2))

# the conjectured product formula on a composite example
print("(36, 6): predicted", conjecture_formula(36, 6), "observed", minimal_period_bruteforce(36, 6))

# a small scan; pairs with some local ratio above 2 are skipped
report = conjecture_scan(range(2, 13), N_limit=100)
print(report.summary())
