"""Polynomials with coefficients in Q(xi_M).

``UniPoly`` is dense: a ``(length, phi(M))`` object array whose row ``k`` is
the power-basis vector of the coefficient of ``z**k``.  ``MultiPoly`` is a
sparse map from exponent tuples to coefficients; its coefficients may be
plain rationals or ``CyclotomicNumber`` values.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import comb
from numbers import Rational

import numpy as np

from .cyclotomic import CyclotomicNumber, _field, as_cyclotomic

__all__ = [
    "UniPoly",
    "MultiPoly",
    "InexactDivisionError",
    "finite_difference",
    "finite_difference_iterated",
    "sum_over",
]


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


def _is_scalar(c) -> bool:
    return isinstance(c, (int, Rational, np.integer, CyclotomicNumber)) and not isinstance(c, bool)


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial in z over Q(xi_M)."""

    __slots__ = ("order", "rows")

    def __init__(self, order: int, rows=None):
        phi = _field(order).phi
        self.order = int(order)
        if rows is None:
            arr = np.zeros((0, phi), dtype=object)
        else:
            arr = np.array(rows, dtype=object)
            if arr.size == 0:
                arr = np.zeros((0, phi), dtype=object)
            arr = arr.reshape(-1, phi)
        nz = np.flatnonzero(np.any(arr != 0, axis=1)) if len(arr) else []
        self.rows = arr[: nz[-1] + 1] if len(nz) else arr[:0]

    @classmethod
    def from_coefficients(cls, M: int, coeffs) -> UniPoly:
        """Build from a sequence of CyclotomicNumber / rational coefficients."""
        phi = _field(M).phi
        rows = [list(as_cyclotomic(M, c).coeffs) for c in coeffs]
        return cls(M, np.array(rows, dtype=object).reshape(-1, phi) if rows else None)

    @classmethod
    def monomial(cls, M: int, k: int, c=1) -> UniPoly:
        return cls.from_coefficients(M, [0] * k + [c])

    @classmethod
    def one_minus_z_power(cls, M: int, k: int) -> UniPoly:
        return cls.from_coefficients(M, [(-1) ** j * comb(k, j) for j in range(k + 1)])

    # basic accessors
    def __len__(self):
        return len(self.rows)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.rows) - 1

    def is_zero(self) -> bool:
        return len(self.rows) == 0

    def coefficient(self, k: int) -> CyclotomicNumber:
        if 0 <= k < len(self.rows):
            return CyclotomicNumber(self.order, list(self.rows[k]), reduced=True)
        return CyclotomicNumber.zero(self.order)

    @property
    def coeffs(self) -> list[CyclotomicNumber]:
        return [self.coefficient(k) for k in range(len(self.rows))]

    def _check(self, other: UniPoly):
        if not isinstance(other, UniPoly):
            raise TypeError(f"expected UniPoly, got {type(other).__name__}")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _padded(self, n: int) -> np.ndarray:
        out = np.zeros((n, self.rows.shape[1]), dtype=object)
        out[: len(self.rows)] = self.rows
        return out

    # ring operations
    def __add__(self, other: UniPoly) -> UniPoly:
        self._check(other)
        n = max(len(self), len(other))
        return UniPoly(self.order, self._padded(n) + other._padded(n))

    def __sub__(self, other: UniPoly) -> UniPoly:
        self._check(other)
        n = max(len(self), len(other))
        return UniPoly(self.order, self._padded(n) - other._padded(n))

    def __neg__(self) -> UniPoly:
        return UniPoly(self.order, -self.rows)

    def scale(self, c) -> UniPoly:
        c = as_cyclotomic(self.order, c)
        if c.is_rational():
            return UniPoly(self.order, self.rows * c.coeffs[0])
        return UniPoly(self.order, self.rows.dot(c.mul_matrix()) if len(self) else None)

    def shift(self, k: int) -> UniPoly:
        """Multiply by z**k."""
        if self.is_zero():
            return self
        pad = np.zeros((k, self.rows.shape[1]), dtype=object)
        return UniPoly(self.order, np.vstack([pad, self.rows]))

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.order)
        nz_self = np.flatnonzero(np.any(self.rows != 0, axis=1))
        nz_other = np.flatnonzero(np.any(other.rows != 0, axis=1))
        # loop over the operand with fewer nonzero coefficients
        if len(nz_other) <= len(nz_self):
            a, b, nz = self, other, nz_other
        else:
            a, b, nz = other, self, nz_self
        out = np.zeros((len(a) + len(b) - 1, a.rows.shape[1]), dtype=object)
        n = len(a)
        for j in nz:
            row = b.rows[j]
            c = CyclotomicNumber(self.order, list(row), reduced=True)
            if c.is_rational():
                out[j : j + n] += a.rows * c.coeffs[0]
            else:
                out[j : j + n] += a.rows.dot(c.mul_matrix())
        return UniPoly(self.order, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        result = UniPoly.from_coefficients(self.order, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.order == other.order and self.rows.shape == other.rows.shape and bool(np.all(self.rows == other.rows))

    __hash__ = None

    def evaluate(self, at) -> CyclotomicNumber:
        """Value at a point of Q(xi_M), by Horner's rule."""
        at = as_cyclotomic(self.order, at)
        if at == 1:
            return CyclotomicNumber(self.order, list(self.rows.sum(axis=0)) if len(self) else [0] * self.rows.shape[1], reduced=True)
        acc = CyclotomicNumber.zero(self.order)
        for k in range(len(self) - 1, -1, -1):
            acc = acc * at + self.coefficient(k)
        return acc

    # division
    def divide_by_one_minus_z(self) -> UniPoly:
        """Exact quotient by (1 - z); raises InexactDivisionError otherwise."""
        if self.is_zero():
            return self
        q = np.cumsum(self.rows, axis=0)
        if any(q[-1]):
            raise InexactDivisionError("polynomial does not vanish at z = 1")
        return UniPoly(self.order, q[:-1])

    def divmod(self, den: UniPoly) -> tuple[UniPoly, UniPoly]:
        """Long division by ``den`` (nonzero)."""
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        m = len(den)
        if len(self) < m:
            return UniPoly(self.order), self
        lead_inv = den.coefficient(m - 1).inverse()
        r = self.rows.copy()
        q = np.zeros((len(self) - m + 1, r.shape[1]), dtype=object)
        den_rational = all(den.coefficient(k).is_rational() for k in range(m))
        den_vals = [den.rows[k][0] for k in range(m)] if den_rational else None
        for k in range(len(q) - 1, -1, -1):
            top = CyclotomicNumber(self.order, list(r[k + m - 1]), reduced=True)
            if top.is_zero():
                continue
            c = top * lead_inv
            q[k] = c.coeffs
            if den_rational:
                for j in range(m):
                    if den_vals[j]:
                        r[k + j] = r[k + j] - np.array(c.coeffs, dtype=object) * den_vals[j]
            else:
                r[k : k + m] = r[k : k + m] - den.rows.dot(c.mul_matrix())
        return UniPoly(self.order, q), UniPoly(self.order, r[: m - 1])

    def divide_exact(self, den: UniPoly) -> UniPoly:
        """Quotient ``q`` with ``self == den * q``; InexactDivisionError otherwise."""
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        k = den.degree
        if den == UniPoly.one_minus_z_power(self.order, k):
            q = self
            for _ in range(k):
                q = q.divide_by_one_minus_z()
            return q
        q, r = self.divmod(den)
        if not r.is_zero():
            raise InexactDivisionError(f"nonzero remainder of degree {r.degree}")
        return q

    def root_multiplicity_at_one(self) -> int:
        """Largest k such that (1 - z)**k divides the polynomial."""
        if self.is_zero():
            raise ValueError("multiplicity of a root of the zero polynomial")
        k = 0
        q = self
        while True:
            try:
                q = q.divide_by_one_minus_z()
            except InexactDivisionError:
                return k
            k += 1

    def __repr__(self):
        return f"UniPoly({self.order}, {self})"

    def __str__(self):
        parts = []
        for k in range(len(self)):
            c = self.coefficient(k)
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# multivariate
# ---------------------------------------------------------------------------

def _clean(c):
    if isinstance(c, np.integer):
        return int(c)
    return c


class MultiPoly:
    """Sparse multivariate polynomial.

    ``variables`` fixes the meaning of exponent positions; ``terms`` never
    stores a zero coefficient.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.variables):
                raise ValueError(f"exponent {exp} does not match variables {self.variables}")
            if c:
                clean[exp] = _clean(c)
        self.terms = clean

    # constructors
    @classmethod
    def constant(cls, c, variables=()) -> MultiPoly:
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, name: str, variables=None) -> MultiPoly:
        variables = (name,) if variables is None else tuple(variables)
        if name not in variables:
            variables = variables + (name,)
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: 1})

    @classmethod
    def vars(cls, *names: str) -> tuple[MultiPoly, ...]:
        return tuple(cls.var(n, names) for n in names)

    # alignment
    def with_variables(self, variables) -> MultiPoly:
        """Re-express over ``variables`` (must include every variable in use)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        used = self.used_variables()
        missing = [v for v in used if v not in index]
        if missing:
            raise ValueError(f"variables {missing} are in use and cannot be dropped")
        pos = [(index[v], i) for i, v in enumerate(self.variables) if v in index]
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for j, i in pos:
                new[j] = exp[i]
            terms[tuple(new)] = c
        return MultiPoly(variables, terms)

    def _align(self, other: MultiPoly):
        if self.variables == other.variables:
            return self, other
        union = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(union), other.with_variables(union)

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            return other
        if _is_scalar(other):
            return MultiPoly.constant(other, self.variables)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def used_variables(self) -> tuple[str, ...]:
        used = set()
        for exp in self.terms:
            used.update(v for v, e in zip(self.variables, exp) if e)
        return tuple(v for v in self.variables if v in used)

    def trimmed(self) -> MultiPoly:
        """Drop variables that appear in no term."""
        return self.with_variables(self.used_variables())

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        a, b = self._align(other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            terms[exp] = terms[exp] + c if exp in terms else c
        return MultiPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if _is_scalar(other):
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        a, b = self._align(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                terms[e] = terms[e] + p if e in terms else p
        return MultiPoly(a.variables, terms)

    def __rmul__(self, other):
        if _is_scalar(other):
            return MultiPoly(self.variables, {e: other * c for e, c in self.terms.items()})
        return self._lift(other) * self

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return MultiPoly(self.variables, {e: c / other for e, c in self.terms.items()})

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def map_coefficients(self, fn) -> MultiPoly:
        return MultiPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def involves(self, var: str) -> bool:
        return var in self.used_variables()

    def coefficient(self, monomial: dict) -> object:
        """Coefficient of the monomial given as ``{var: exponent}``."""
        exp = tuple(monomial.get(v, 0) for v in self.variables)
        if any(v not in self.variables and e for v, e in monomial.items()):
            return 0
        return self.terms.get(exp, 0)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def __eq__(self, other):
        if _is_scalar(other):
            other = MultiPoly.constant(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        if a.terms.keys() != b.terms.keys():
            return False
        return all(a.terms[e] == b.terms[e] for e in a.terms)

    __hash__ = None

    # substitution / evaluation
    def substitute(self, mapping: dict) -> MultiPoly:
        """Replace variables by MultiPoly values or constants, simultaneously."""
        mapping = {v: r for v, r in mapping.items() if v in self.variables}
        if not mapping:
            return self
        keep = tuple(v for v in self.variables if v not in mapping)
        idx_keep = [self.variables.index(v) for v in keep]
        subs = [(self.variables.index(v), r) for v, r in mapping.items()]
        out_vars = keep
        for _, r in subs:
            if isinstance(r, MultiPoly):
                out_vars = out_vars + tuple(v for v in r.variables if v not in out_vars)
        powers: dict = {}

        def power(k, r, a):
            key = (k, a)
            if key not in powers:
                if isinstance(r, MultiPoly):
                    base = r.with_variables(out_vars) if a else None
                    powers[key] = base ** a if a else MultiPoly.constant(1, out_vars)
                else:
                    powers[key] = r ** a
            return powers[key]

        # group terms by the exponents of the substituted variables
        groups: dict = defaultdict(dict)
        for exp, c in self.terms.items():
            sub_exp = tuple(exp[k] for k, _ in subs)
            rest = tuple(exp[i] for i in idx_keep) + (0,) * (len(out_vars) - len(keep))
            groups[sub_exp][rest] = c
        result = MultiPoly(out_vars)
        for sub_exp, terms in groups.items():
            scal = 1
            poly_factor = None
            for (k, r), a in zip(subs, sub_exp):
                pw = power(k, r, a)
                if isinstance(pw, MultiPoly):
                    poly_factor = pw if poly_factor is None else poly_factor * pw
                else:
                    scal = scal * pw
            part = MultiPoly(out_vars, terms)
            if not (isinstance(scal, int) and scal == 1):
                part = part * scal
            if poly_factor is not None:
                part = part * poly_factor
            result = result + part
        return result

    def evaluate(self, point: dict):
        """Scalar value at a point giving every variable in use."""
        missing = [v for v in self.used_variables() if v not in point]
        if missing:
            raise ValueError(f"no value for variables {missing}")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(self.variables, exp):
                if e:
                    term = term * point[v] ** e
            total = total + term
        return total

    # rendering
    def sorted_terms(self):
        """Terms in canonical order: lexicographic by exponent vector, descending."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e)
            coef = f"({c})"
            parts.append(coef if not mono else f"{coef}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.variables}, {self})"


# ---------------------------------------------------------------------------
# finite differences and index sums
# ---------------------------------------------------------------------------

def finite_difference(f: MultiPoly, var: str, step, order: int) -> MultiPoly:
    """``order``-fold forward difference of ``f`` in ``var`` with the given step.

    Binomial-sum form: sum_j (-1)**(order - j) * C(order, j) * f(var + j*step).
    """
    if order < 0:
        raise ValueError("difference order must be natural")
    if var not in f.variables:
        return f if order == 0 else MultiPoly(f.variables)
    v = MultiPoly.var(var, f.variables)
    step = f._lift(step)
    result = MultiPoly(f.variables)
    for j in range(order + 1):
        shifted = f.substitute({var: v + step * j})
        result = result + shifted * ((-1) ** (order - j) * comb(order, j))
    return result


def finite_difference_iterated(f: MultiPoly, var: str, step, order: int) -> MultiPoly:
    """Same operator as :func:`finite_difference`, by repeated first differences."""
    if var not in f.variables:
        return f if order == 0 else MultiPoly(f.variables)
    v = MultiPoly.var(var, f.variables)
    step = f._lift(step)
    g = f
    for _ in range(order):
        g = g.substitute({var: v + step}) - g
    return g


def sum_over(poly: MultiPoly, variables, values, weights) -> MultiPoly:
    """Exact value of sum_i weights[i] * poly(variables = values[i]).

    Each monomial in ``variables`` is replaced by its weighted moment, so the
    cost scales with the number of distinct exponent patterns rather than with
    expanding ``poly`` at every point.  Equal weights are pooled first.
    """
    variables = tuple(variables)
    if len(values) != len(weights):
        raise ValueError("values and weights differ in length")
    present = [v for v in variables if v in poly.variables]
    pos = [poly.variables.index(v) for v in present]
    vidx = [variables.index(v) for v in present]
    keep = tuple(v for v in poly.variables if v not in present)
    idx_keep = [poly.variables.index(v) for v in keep]

    # pool points by weight
    pools: dict = defaultdict(list)
    for val, w in zip(values, weights):
        if w:
            pools[w].append(tuple(val[i] for i in vidx))

    moments: dict = {}

    def moment(e):
        if e not in moments:
            total = 0
            for w, pts in pools.items():
                s = 0
                for pt in pts:
                    t = 1
                    for x, k in zip(pt, e):
                        if k:
                            t *= x**k
                    s += t
                if s:
                    total = total + w * s
            moments[e] = total
        return moments[e]

    terms: dict = {}
    for exp, c in poly.terms.items():
        mu = moment(tuple(exp[i] for i in pos))
        if not mu:
            continue
        rest = tuple(exp[i] for i in idx_keep)
        val = c * mu
        terms[rest] = terms[rest] + val if rest in terms else val
    return MultiPoly(keep, terms)
