"""
Reading digits in one base and evaluating them in another
==========================================================

B_{M,N}(n) takes the base-M digits of n and evaluates them in base N.
With N = 1 it is the base-M digit sum; with N = M it is the identity.
"""

import numpy as np

from shiftdigits import b_sequence, base_shift, digits

# 11 in base 3 is (2, 0, 1) little-endian; read in base 5 it becomes 2 + 0*5 + 1*25
print("digits of 11 in base 3:", list(digits(11, 3)))
print("B_{3,5}(11) =", base_shift(11, 3, 5))

# N = 1 gives the digit sum, N = M leaves n unchanged
print("decimal digit sum of 98765:", base_shift(98765, 10, 1))
print("B_{7,7}(12345) =", base_shift(12345, 7, 7))

# the residue sequence b(n) = B(n) mod M, computed in bulk
seq = b_sequence(32, 2, 1)
print("Thue-Morse from b(n) with M=2, N=1:", "".join(map(str, seq)))

# values grow fast when N > M, so exact Python integers are used throughout
big = base_shift(10**30, 2, 10)
print("B_{2,10}(10**30) has", len(str(big)), "decimal digits")

# a vectorised sanity check against the scalar map
n = np.arange(1000)
assert all(b_sequence(1000, 6, 4) == [base_shift(int(k), 6, 4) % 6 for k in n])
print("vectorised and scalar b(n) agree on n < 1000")
