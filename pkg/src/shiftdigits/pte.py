"""Prouhet-Tarry-Escott solutions from the base-shifting map.

The integers 0 .. M**(p+1) - 1 are split into M blocks by the residue of
B_{M,N}(m) mod M.  For gcd(M, N) == 1 the blocks share all power sums of
degree 0..p; for gcd(M, N) > 1 some power sum of degree <= p differs.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .digitmap import InvalidInputError, base_shift_table, euler_phi
from .errors import TheoremViolation

__all__ = [
    "PteSolution",
    "build_partition",
    "power_sum_table",
    "certify",
    "enumerate_solutions",
]


@dataclass
class PteSolution:
    M: int
    N: int
    p: int
    blocks: list[list[int]]
    certified_degree: int | None = None
    power_sums: list[list[int]] = field(default_factory=list)
    # smallest degree k at which the block power sums differ, when certification failed
    failing_degree: int | None = None

    @property
    def certified(self) -> bool:
        return self.certified_degree is not None and self.failing_degree is None

    def block_of(self, m: int) -> int:
        for j, blk in enumerate(self.blocks):
            if m in blk:
                return j
        raise KeyError(m)

    def same_partition(self, other: PteSolution) -> bool:
        """Equality as set partitions (block labels ignored)."""
        return sorted(map(tuple, self.blocks)) == sorted(map(tuple, other.blocks))

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "N": self.N,
            "p": self.p,
            "certified": self.certified,
            "certified_degree": self.certified_degree,
            "failing_degree": self.failing_degree,
            "blocks": {str(j): blk for j, blk in enumerate(self.blocks)},
            # k-th row holds the k-th power sums of blocks 0..M-1; decimal strings keep big values exact
            "power_sums": [[str(v) for v in row] for row in self.power_sums],
        }

    def power_sums_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k"] + [f"T{j}" for j in range(self.M)])
        for k, row in enumerate(self.power_sums):
            w.writerow([k] + row)
        return buf.getvalue()


def build_partition(M: int, N: int, p: int) -> PteSolution:
    """Blocks T_j = {m < M**(p+1) : B_{M,N}(m) == j mod M}, sorted ascending."""
    if M < 2:
        raise InvalidInputError(f"M must be >= 2, got {M}")
    if p < 0:
        raise InvalidInputError(f"p must be >= 0, got {p}")
    if not 1 <= N <= M - 1:
        raise InvalidInputError(f"N must lie in [1, M-1] = [1, {M - 1}], got {N}")
    size = M ** (p + 1)
    table = base_shift_table(size, M, N)
    blocks: list[list[int]] = [[] for _ in range(M)]
    for m, v in enumerate(table):
        blocks[v % M].append(m)
    return PteSolution(M, N, p, blocks)


def power_sum_table(blocks, degree: int) -> list[list[int]]:
    """``table[k][j]`` = sum of m**k over block j, exact, for k <= degree."""
    table = []
    powers = [[1] * len(blk) for blk in blocks]
    for k in range(degree + 1):
        table.append([sum(pw) for pw in powers])
        powers = [[pw * m for pw, m in zip(pws, blk)] for pws, blk in zip(powers, blocks)]
    return table


def certify(solution: PteSolution, degree: int | None = None) -> PteSolution:
    """Check equal power sums of degree 0..degree across the blocks.

    Returns a new PteSolution carrying the table.  On failure
    ``failing_degree`` is the smallest k whose row is not constant.
    """
    degree = solution.p if degree is None else degree
    if degree > solution.p:
        raise InvalidInputError(f"degree {degree} exceeds the construction's p = {solution.p}")
    table = power_sum_table(solution.blocks, degree)
    failing = next((k for k, row in enumerate(table) if len(set(row)) != 1), None)
    return PteSolution(solution.M, solution.N, solution.p, solution.blocks,
                       certified_degree=degree, power_sums=table, failing_degree=failing)


def _certified(args):
    M, N, p = args
    return certify(build_partition(M, N, p), p)


def enumerate_solutions(M: int, p: int, workers: int = 1) -> list[PteSolution]:
    """One certified solution per N in [1, M-1] coprime to M, ordered by N."""
    if M < 2 or p < 1:
        raise InvalidInputError("need M >= 2 and p >= 1")
    jobs = [(M, N, p) for N in range(1, M) if gcd(M, N) == 1]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            sols = list(pool.map(_certified, jobs))
    else:
        sols = [_certified(j) for j in jobs]
    sols.sort(key=lambda s: s.N)
    bad = [s.N for s in sols if not s.certified]
    if bad:
        raise TheoremViolation(f"coprime N failed certification: {bad}")
    for i, a in enumerate(sols):
        for b in sols[i + 1:]:
            if a.same_partition(b):
                raise TheoremViolation(f"N = {a.N} and N = {b.N} give the same partition")
    if len(sols) != euler_phi(M):
        raise TheoremViolation(f"found {len(sols)} solutions, expected phi({M}) = {euler_phi(M)}")
    return sols
