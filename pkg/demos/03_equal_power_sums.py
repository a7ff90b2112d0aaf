"""
Equal power sums from the digit map
===================================

Split 0 .. M^(p+1) - 1 into M blocks by the residue of B_{M,N}(m) mod M.
When gcd(M, N) = 1 every block has the same k-th power sum for k <= p.
"""

from shiftdigits.pte import build_partition, certify, enumerate_solutions

# M = 2, N = 1 is the Thue-Morse split of 0..7
sol = certify(build_partition(2, 1, 2))
print("blocks:", sol.blocks)
print(sol.power_sums_csv())

# a non-coprime N breaks the equality; the first failing degree is reported
bad = certify(build_partition(6, 2, 1))
print("M=6, N=2 certified?", bad.certified, "first failing degree:", bad.failing_degree)

# one distinct solution per N coprime to M
for s in enumerate_solutions(5, 1):
    print(f"N={s.N}:", s.blocks)
