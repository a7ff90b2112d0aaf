"""Base-M digit expansions and the base-shifting map.

``base_shift(n, M, N)`` reads the base-``M`` digit string of ``n`` and
evaluates it in base ``N``.  With ``N == 1`` this is the classical base-``M``
sum of digits; with ``N == M`` it is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

import numpy as np

__all__ = [
    "DigitVector",
    "InvalidBaseError",
    "InvalidInputError",
    "digits",
    "from_digits",
    "base_shift",
    "b_mod",
    "b_sequence",
    "factorize",
    "is_prime",
    "radical",
    "radical_divides",
    "euler_phi",
    "divisors",
]


class InvalidBaseError(ValueError):
    pass


class InvalidInputError(ValueError):
    pass


def _check_base(M: int) -> None:
    if not isinstance(M, (int, np.integer)) or M < 2:
        raise InvalidBaseError(f"base must be an integer >= 2, got {M!r}")


def _check_target(N: int) -> None:
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise InvalidBaseError(f"target base must be an integer >= 1, got {N!r}")


def _check_natural(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidInputError(f"expected a natural number, got {n!r}")


@dataclass(frozen=True)
class DigitVector:
    """Little-endian base-``base`` expansion; ``digits[i]`` is d_i(n).

    Zero is the empty vector.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        if any(not 0 <= d < self.base for d in self.digits):
            raise InvalidInputError(f"digit out of range for base {self.base}: {self.digits}")
        if self.digits and self.digits[-1] == 0:
            raise InvalidInputError("digit vector has a trailing zero")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def value(self, radix: int | None = None) -> int:
        """Evaluate the digit string in ``radix`` (defaults to the own base)."""
        r = self.base if radix is None else radix
        acc = 0
        for d in reversed(self.digits):
            acc = acc * r + d
        return acc


def digits(n: int, M: int) -> DigitVector:
    _check_base(M)
    _check_natural(n)
    n = int(n)
    out = []
    while n:
        n, d = divmod(n, M)
        out.append(d)
    return DigitVector(int(M), tuple(out))


def from_digits(ds, M: int) -> int:
    return sum(d * M**i for i, d in enumerate(ds))


def base_shift(n: int, M: int, N: int) -> int:
    """The base-shifting map: sum of d_i(n) * N**i over the base-M digits of n."""
    _check_base(M)
    _check_target(N)
    _check_natural(n)
    n, M, N = int(n), int(M), int(N)
    if M == N:
        return n
    acc = 0
    weight = 1
    while n:
        n, d = divmod(n, M)
        acc += d * weight
        weight *= N
    return acc


def b_mod(n: int, M: int, N: int) -> int:
    """Residue of the base-shifting map modulo M."""
    _check_base(M)
    _check_target(N)
    _check_natural(n)
    n, M, N = int(n), int(M), int(N)
    acc = 0
    weight = 1
    while n and weight:
        n, d = divmod(n, M)
        acc = (acc + d * weight) % M
        weight = weight * N % M
    return acc


def b_sequence(length: int, M: int, N: int, start: int = 0) -> np.ndarray:
    """Vector of b(n) for n in ``[start, start + length)`` as int64.

    Built digit-plane by digit-plane, so the cost is O(length * log_M(end)).
    """
    _check_base(M)
    _check_target(N)
    if length < 0 or start < 0:
        raise InvalidInputError("length and start must be natural")
    n = np.arange(start, start + length, dtype=object if start + length >= 2**62 else np.int64)
    out = np.zeros(length, dtype=np.int64)
    weight = 1
    while weight and length and np.any(n):
        n, d = np.divmod(n, M)
        out = (out + d.astype(np.int64) * weight) % M
        weight = weight * N % M
    return out


def base_shift_table(limit: int, M: int, N: int) -> list[int]:
    """base_shift(m, M, N) for every m < limit, built by the digit recursion
    B(qM + d) = N*B(q) + d."""
    _check_base(M)
    _check_target(N)
    table = [0] * limit
    for m in range(1, limit):
        q, d = divmod(m, M)
        table[m] = N * table[q] + d
    return table


# -- arithmetic helpers -------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        for p in (2, 3, 5, 7, 11, 13):
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        if m == 1:
            continue
        p = 17
        while p * p <= m and p < 10_000:
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
            p += 2
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
        elif p * p > m:
            out[m] = out.get(m, 0) + 1
        else:
            f = _pollard_rho(m)
            stack.extend((f, m // f))
    return tuple(sorted(out.items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{p: exponent}``; ``factorize(1) == {}``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"cannot factor {n!r}")
    return dict(_factor_cached(int(n)))


def radical(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidInputError(f"radical is defined for k >= 1, got {k!r}")
    return prod(factorize(k))


def radical_divides(M: int, N: int) -> bool:
    """True iff every prime factor of M divides N."""
    _check_base(M)
    _check_target(N)
    return all(N % p == 0 for p in factorize(M))


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)
