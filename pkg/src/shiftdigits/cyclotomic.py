"""Exact arithmetic in the cyclotomic field Q(xi_M).

Elements live in Q[x]/(Phi_M(x)) in the power basis 1, x, ..., x^(phi(M)-1),
so every element has a unique coefficient vector and zero-testing is exact.
Rationals embed in every field; mixing two different orders is an error.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

from .config import ConfigurationError, get_config
from .digitmap import divisors, euler_phi

__all__ = [
    "CyclotomicNumber",
    "OrderMismatchError",
    "cyclotomic_poly",
    "xi_power",
    "xi_power_table",
    "from_residue_counts",
    "as_cyclotomic",
]


class OrderMismatchError(ValueError):
    pass


# -- dense polynomials over Q as lists, lowest degree first ------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim(x - y for x, y in zip(a, b))


def _pdivmod(a, b):
    """Quotient and remainder of a by b over Q (b nonzero)."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    lead = Fraction(b[-1])
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = [Fraction(x) for x in a]
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_M, lowest degree first.

    Computed as (x^M - 1) divided by Phi_d for every proper divisor d of M.
    """
    if M < 1:
        raise ValueError(f"cyclotomic polynomial needs M >= 1, got {M}")
    num = [-1] + [0] * (M - 1) + [1]
    for d in divisors(M)[:-1]:
        num, rem = _pdivmod(num, cyclotomic_poly(d))
        assert not rem
    return tuple(int(c) for c in num)


class _FieldData:
    """Per-order tables: Phi_M and the reduced forms of x^k."""

    def __init__(self, M: int):
        self.M = M
        self.phi = euler_phi(M)
        self.poly = cyclotomic_poly(M)
        n = self.phi
        # x^k mod Phi_M for k < max(M, 2*phi - 1); all integer since Phi_M is monic
        size = max(M, 2 * n - 1)
        rows = []
        cur = [0] * n
        cur[0] = 1
        for _ in range(size):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(n):
                    cur[j] -= top * self.poly[j]
        self.power_rows = rows
        self.power_matrix = np.array(rows, dtype=np.int64).reshape(size, n)


@lru_cache(maxsize=None)
def _field_data(M: int) -> _FieldData:
    return _FieldData(M)


def _field(M: int) -> _FieldData:
    if not isinstance(M, (int, np.integer)) or M < 2:
        raise ValueError(f"cyclotomic order must be >= 2, got {M!r}")
    cap = get_config().M_cap
    if M > cap:
        raise ConfigurationError(f"cyclotomic order {M} exceeds configured cap {cap}")
    return _field_data(int(M))


def _reduce(M: int, coeffs) -> tuple[Fraction, ...]:
    """Reduce an arbitrary-length coefficient list modulo Phi_M."""
    f = _field(M)
    n = f.phi
    out = [Fraction(c) for c in coeffs[:n]] + [Fraction(0)] * max(0, n - len(coeffs))
    if len(coeffs) > n:
        high = list(coeffs[n:])
        if len(coeffs) <= len(f.power_rows):
            for k, c in enumerate(high, start=n):
                if c:
                    row = f.power_rows[k]
                    for j in range(n):
                        if row[j]:
                            out[j] += c * row[j]
        else:
            _, r = _pdivmod(list(coeffs), f.poly)
            out = [Fraction(c) for c in r] + [Fraction(0)] * (n - len(r))
    return tuple(out)


class CyclotomicNumber:
    """An element of Q(xi_M) stored as its reduced power-basis vector."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs=(), *, reduced: bool = False):
        f = _field(order)
        self.order = int(order)
        if reduced:
            if len(coeffs) != f.phi:
                raise ValueError("reduced coefficient vector has the wrong length")
            self.coeffs = tuple(Fraction(c) for c in coeffs)
        else:
            self.coeffs = _reduce(self.order, list(coeffs))
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, M: int) -> CyclotomicNumber:
        return cls(M, [0] * _field(M).phi, reduced=True)

    @classmethod
    def one(cls, M: int) -> CyclotomicNumber:
        return cls.from_rational(M, 1)

    @classmethod
    def from_rational(cls, M: int, q) -> CyclotomicNumber:
        n = _field(M).phi
        return cls(M, [q] + [0] * (n - 1), reduced=True)

    @classmethod
    def xi(cls, M: int, e: int = 1) -> CyclotomicNumber:
        return xi_power(M, e)

    # properties
    @property
    def phi(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # coercion
    def _coerce(self, other) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"cannot combine elements of Q(xi_{self.order}) and Q(xi_{other.order})"
                )
            return other
        if isinstance(other, (int, Rational, np.integer)):
            return CyclotomicNumber.from_rational(self.order, Fraction(int(other)) if isinstance(other, np.integer) else other)
        return None

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)], reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-a for a in self.coeffs], reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)], reduced=True)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, np.integer)) and not isinstance(other, bool):
            s = Fraction(int(other)) if isinstance(other, np.integer) else other
            return CyclotomicNumber(self.order, [a * s for a in self.coeffs], reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.order, _pmul(self.coeffs, o.coeffs) or [0])

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Multiplicative inverse via the extended Euclidean algorithm with Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.order, 1 / self.coeffs[0])
        # invariant: s * self == r (mod Phi_M)
        r0, r1 = list(_field(self.order).poly), _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        if not r1:
            raise ArithmeticError("element is not invertible modulo Phi_M")
        c = Fraction(r1[0])
        return CyclotomicNumber(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, np.integer)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            s = Fraction(int(other))if isinstance(other, np.integer) else Fraction(other)
            return CyclotomicNumber(self.order, [a / s for a in self.coeffs], reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, (int, np.integer)):
            return NotImplemented
        e = int(e)
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = CyclotomicNumber.one(self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, np.integer)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # rendering
    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("xi" if i == 1 else f"xi^{i}")
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"({c})*{mono}" if c.denominator != 1 else f"{c}*{mono}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> CyclotomicNumber:
        return cls(int(data["order"]), [Fraction(s) for s in data["coeffs"]], reduced=True)

    def to_complex(self) -> complex:
        """Approximate value under xi -> exp(2 pi i / M).  Debug display only."""
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def mul_matrix(self) -> np.ndarray:
        """Matrix (object dtype) of multiplication by self: row-vector v -> v @ A."""
        n = self.phi
        rows = []
        for i in range(n):
            basis = [0] * i + [1]
            rows.append((CyclotomicNumber(self.order, basis) * self).coeffs)
        return np.array(rows, dtype=object).reshape(n, n)


def as_cyclotomic(M: int, value) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        if value.order != M:
            raise OrderMismatchError(f"expected order {M}, got {value.order}")
        return value
    return CyclotomicNumber.from_rational(M, value)


def xi_power(M: int, e: int) -> CyclotomicNumber:
    """Reduced representation of xi^(e mod M)."""
    f = _field(M)
    return CyclotomicNumber(M, f.power_rows[int(e) % M], reduced=True)


def xi_power_table(M: int) -> np.ndarray:
    """int64 array of shape (M, phi(M)); row e is the coefficient vector of xi^e."""
    return _field(M).power_matrix[:M]


def from_residue_counts(M: int, counts) -> CyclotomicNumber:
    """Sum of counts[e] * xi^e over e < M (counts may be ints or Fractions)."""
    f = _field(M)
    acc = [0] * f.phi
    for e, c in enumerate(counts):
        if c:
            row = f.power_rows[e]
            for j in range(f.phi):
                if row[j]:
                    acc[j] += c * row[j]
    return CyclotomicNumber(M, acc, reduced=True)
