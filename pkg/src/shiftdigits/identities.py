"""Generating polynomials G_p, F_p and exact checks of the summation identities.

Everything here is only defined when rad(M) does not divide rad(N): then
xi**(N**l) != 1 for every l, which is what makes the digit-wise geometric
sums vanish.  Identity checks return an :class:`IdentityReport`; helpers that
compute a quantity (``beta``, ``moment0`` ...) raise :class:`TheoremViolation`
when the value they rely on turns out to be wrong.

Symbolic checks evaluate the index sums exactly through weighted moments
(:func:`~shiftdigits.polyring.sum_over`).  The ``sampled`` mode instead
evaluates the left-hand side by literal enumeration at a grid of
(degree + 1) ** (#variables) integer points, which also decides a polynomial
identity but costs far more enumeration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

import numpy as np

from .config import get_config
from .cyclotomic import CyclotomicNumber, xi_power, xi_power_table
from .digitmap import b_sequence, base_shift_table, radical_divides
from .errors import InvalidParametersError, TheoremViolation
from .polyring import (
    InexactDivisionError,
    MultiPoly,
    UniPoly,
    finite_difference,
    sum_over,
)

__all__ = [
    "IDENTITY_IDS",
    "IdentityReport",
    "BetaSequence",
    "check_parameters",
    "build_G",
    "power_sum_S",
    "beta",
    "beta_by_convolution",
    "moment0",
    "moment1",
    "moment0_formula",
    "moment1_formula",
    "verify_G_multiplicity",
    "verify_S_k_vanishing",
    "verify_convolution_forward",
    "verify_convolution_inverse",
    "verify_convolutions",
    "verify_moment0",
    "verify_moment1",
    "verify_fd_single",
    "verify_fd_multi",
    "verify_poly_vanishing",
    "poly_vanishing_sum",
    "S_pl",
    "S_closed_form",
    "verify_S_closed_form",
    "first_closed_form_rhs",
    "verify_first_closed_form",
    "second_closed_form_rhs",
    "second_form_collapse",
    "verify_second_closed_form",
    "random_polynomial",
    "verify_all",
]

IDENTITY_IDS = (
    "G-multiplicity",
    "S_k-vanishing",
    "convolution-forward",
    "convolution-inverse",
    "moment-0",
    "moment-1",
    "fd-single",
    "fd-multi",
    "poly-vanishing",
    "S_pl-closed-form",
    "first-closed-form",
    "second-closed-form",
)


@dataclass
class IdentityReport:
    identity: str
    params: dict
    verified: bool
    witness: str | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.identity not in IDENTITY_IDS:
            raise ValueError(f"unknown identity id {self.identity!r}")
        if self.verified != (self.witness is None):
            raise ValueError("verified must be true exactly when no witness is given")

    def to_json(self) -> dict:
        out = {"identity": self.identity, "params": self.params, "verified": self.verified,
               "witness": self.witness}
        if self.details:
            out["details"] = self.details
        return out


def _report(identity, params, lhs, rhs, details=None) -> IdentityReport:
    diff = lhs - rhs
    ok = diff == 0
    return IdentityReport(identity, params, bool(ok), None if ok else str(diff), details or {})


def check_parameters(p: int, M: int, N: int) -> None:
    if M < 2 or N < 1 or p < 0:
        raise InvalidParametersError(f"need M >= 2, N >= 1, p >= 0; got M={M}, N={N}, p={p}")
    if radical_divides(M, N):
        raise InvalidParametersError(
            f"rad({M}) divides rad({N}); the generating-function identities need rad(M) not dividing rad(N)"
        )


def _check_p_list(p_list, M, N):
    p_list = tuple(int(p) for p in p_list)
    if not p_list:
        raise InvalidParametersError("need at least one p_j")
    for p in p_list:
        check_parameters(p, M, N)
    return p_list


# -- cached building blocks -------------------------------------------------------

@lru_cache(maxsize=256)
def _residues(M: int, N: int, length: int) -> np.ndarray:
    return b_sequence(length, M, N)


@lru_cache(maxsize=256)
def _shift_values(M: int, N: int, length: int) -> tuple[int, ...]:
    return tuple(base_shift_table(length, M, N))


@lru_cache(maxsize=256)
def _xi_weights(M: int, N: int, length: int) -> tuple[CyclotomicNumber, ...]:
    powers = [xi_power(M, e) for e in range(M)]
    return tuple(powers[e] for e in _residues(M, N, length))


def _inv_one_minus_xi_product(M: int, N: int, p: int) -> CyclotomicNumber:
    """Product over l <= p of 1 / (1 - xi**(N**l))."""
    acc = CyclotomicNumber.one(M)
    for l in range(p + 1):
        acc = acc * (1 - xi_power(M, pow(N, l, M)))
    return acc.inverse()


# -- G_p and F_p --------------------------------------------------------------------

def build_G(p: int, M: int, N: int, form: str = "sum") -> UniPoly:
    """G_p(z): sum of xi**B(m) * z**m over m < M**(p+1).

    ``form="product"`` builds the same polynomial digit by digit as the
    product over l <= p of sum_d (xi**(N**l) * z**(M**l))**d.
    """
    check_parameters(p, M, N)
    if form == "sum":
        res = _residues(M, N, M ** (p + 1))
        return UniPoly(M, xi_power_table(M)[res].astype(object))
    if form == "product":
        poly = UniPoly.from_coefficients(M, [1])
        for l in range(p + 1):
            step, e = M**l, pow(N, l, M)
            rows = np.zeros(((M - 1) * step + 1, len(xi_power(M, 0).coeffs)), dtype=object)
            for d in range(M):
                rows[d * step] = xi_power_table(M)[d * e % M]
            poly = poly * UniPoly(M, rows)
        return poly
    raise ValueError(f"unknown form {form!r}")


def power_sum_S(k: int, p: int, M: int, N: int) -> CyclotomicNumber:
    """Sum of m**k * xi**B(m) over m < M**(p+1)."""
    check_parameters(p, M, N)
    if k < 0:
        raise InvalidParametersError("k must be natural")
    res = _residues(M, N, M ** (p + 1))
    counts = [0] * M
    for m, e in enumerate(res.tolist()):
        counts[e] += m**k
    from .cyclotomic import from_residue_counts

    return from_residue_counts(M, counts)


@dataclass
class BetaSequence:
    """Coefficients of F_p(z) = G_p(z) / (1 - z)**(p+1)."""

    M: int
    N: int
    p: int
    poly: UniPoly

    @property
    def coeffs(self) -> list[CyclotomicNumber]:
        return self.poly.coeffs

    def __len__(self):
        return len(self.poly)

    def __getitem__(self, k: int) -> CyclotomicNumber:
        return self.poly.coefficient(k)

    def to_json(self) -> dict:
        return {"M": self.M, "N": self.N, "p": self.p,
                "coeffs": [c.to_json()["coeffs"] for c in self.coeffs]}


def beta(p: int, M: int, N: int) -> BetaSequence:
    """beta_k^(p) by exact division of G_p by (1 - z)**(p+1)."""
    G = build_G(p, M, N)
    try:
        F = G.divide_exact(UniPoly.one_minus_z_power(M, p + 1))
    except InexactDivisionError as exc:
        raise TheoremViolation(
            f"(1 - z)^{p + 1} does not divide G_{p} for M={M}, N={N}",
            witness=f"root multiplicity {G.root_multiplicity_at_one()}",
        ) from exc
    return BetaSequence(M, N, p, F)


def beta_by_convolution(q: int, M: int, N: int) -> BetaSequence:
    """beta_n^(q) = sum_{k <= n} xi**B(k) * C(n - k + q, q), k < M**(q+1).

    The convolution is evaluated through prefix moments: q! * C(m + q, q) is
    the integer polynomial prod_{i=1..q} (m + i), so expanding it at
    m = n - k splits the sum into prefix sums of G_k * k**b weighted by
    polynomials in n.  Indices n run over [0, M**(q+1) + q + 1) so that the
    vanishing tail past the support is checked as well.
    """
    check_parameters(q, M, N)
    L = M ** (q + 1)
    length = L + q + 1
    G = np.zeros((length, len(xi_power(M, 0).coeffs)), dtype=object)
    G[:L] = build_G(q, M, N)._padded(L)
    # s(m) = prod_{i=1..q} (m + i), coefficients lowest first
    s = [1]
    for i in range(1, q + 1):
        s = [a + b for a, b in itertools.zip_longest([0] + s, [i * c for c in s], fillvalue=0)]
    n = np.arange(length, dtype=object)
    k = n
    total = np.zeros_like(G)
    for b in range(q + 1):
        # Q_b(n) = sum_c s_c * C(c, b) * n**(c - b)
        Qb = np.zeros(length, dtype=object)
        for c in range(b, q + 1):
            if s[c]:
                Qb = Qb + s[c] * comb(c, b) * n ** (c - b)
        Pb = np.cumsum(G * (k**b)[:, None], axis=0)
        total = total + ((-1) ** b) * Pb * Qb[:, None]
    qf = factorial(q)
    flat = total.ravel()
    if all(v % qf == 0 for v in flat):
        out = (total // qf)
    else:  # pragma: no cover - the product above is always divisible by q!
        out = np.vectorize(lambda v: Fraction(v, qf), otypes=[object])(total)
    return BetaSequence(M, N, q, UniPoly(M, out))


# -- moments ----------------------------------------------------------------------

def moment0_formula(p: int, M: int, N: int) -> CyclotomicNumber:
    return M ** ((p + 1) * (p + 2) // 2) * _inv_one_minus_xi_product(M, N, p)


def moment1_formula(p: int, M: int, N: int) -> CyclotomicNumber:
    acc = CyclotomicNumber.zero(M)
    for l in range(p + 1):
        w = xi_power(M, pow(N, l, M))
        acc = acc + Fraction(M ** (l + 1) - 1, 2) + M**l * w / (1 - w)
    return moment0_formula(p, M, N) * acc


def _moments(p, M, N):
    F = beta(p, M, N).poly
    m0 = CyclotomicNumber(M, list(F.rows.sum(axis=0)), reduced=True)
    ks = np.arange(len(F), dtype=object)
    m1 = CyclotomicNumber(M, list((F.rows * ks[:, None]).sum(axis=0)), reduced=True)
    return m0, m1


def moment0(p: int, M: int, N: int) -> CyclotomicNumber:
    """Sum of beta_k^(p); raises TheoremViolation if it differs from the closed form."""
    m0, _ = _moments(p, M, N)
    formula = moment0_formula(p, M, N)
    if m0 != formula:
        raise TheoremViolation(f"0-th moment mismatch for p={p}, M={M}, N={N}", witness=str(m0 - formula))
    return m0


def moment1(p: int, M: int, N: int) -> CyclotomicNumber:
    """Sum of k * beta_k^(p); raises TheoremViolation if it differs from the closed form."""
    _, m1 = _moments(p, M, N)
    formula = moment1_formula(p, M, N)
    if m1 != formula:
        raise TheoremViolation(f"1st moment mismatch for p={p}, M={M}, N={N}", witness=str(m1 - formula))
    return m1


# -- identity reports: generating functions ----------------------------------------

def verify_G_multiplicity(p: int, M: int, N: int) -> IdentityReport:
    """(1 - z)**(p+1) divides G_p, and the sum and product forms of G_p agree."""
    G = build_G(p, M, N)
    params = {"p": p, "M": M, "N": N}
    mult = G.root_multiplicity_at_one()
    same = G == build_G(p, M, N, form="product")
    witness = None
    if mult < p + 1:
        witness = f"root multiplicity at z=1 is {mult} < {p + 1}"
    elif not same:
        witness = "sum form and product form of G_p differ"
    return IdentityReport("G-multiplicity", params, witness is None, witness,
                          {"multiplicity": mult, "product_form_agrees": same})


def verify_S_k_vanishing(p: int, M: int, N: int, k: int | None = None) -> IdentityReport:
    """S_k == 0 for every k <= p (or for the single given k <= p)."""
    check_parameters(p, M, N)
    if k is not None and not 0 <= k <= p:
        raise InvalidParametersError(f"S_k vanishes only for 0 <= k <= p; got k={k}, p={p}")
    ks = range(p + 1) if k is None else [k]
    params = {"p": p, "M": M, "N": N} | ({} if k is None else {"k": k})
    for kk in ks:
        s = power_sum_S(kk, p, M, N)
        if not s.is_zero():
            return IdentityReport("S_k-vanishing", params, False, f"S_{kk} = {s}")
    return IdentityReport("S_k-vanishing", params, True)


def verify_convolution_forward(p: int, M: int, N: int) -> IdentityReport:
    """beta^(p+1) from division equals the binomial convolution of G_(p+1)."""
    params = {"p": p, "M": M, "N": N}
    by_div = beta(p + 1, M, N).poly
    by_conv = beta_by_convolution(p + 1, M, N).poly
    if by_div == by_conv:
        return IdentityReport("convolution-forward", params, True, details={"length": len(by_div)})
    diff = by_div - by_conv
    first = next(i for i in range(len(diff)) if not diff.coefficient(i).is_zero())
    return IdentityReport("convolution-forward", params, False,
                          f"index {first}: {diff.coefficient(first)}")


def verify_convolution_inverse(p: int, M: int, N: int) -> IdentityReport:
    """xi**B(n) == sum_k (-1)**k C(p+1, k) beta_(n-k)^(p) for n < M**(p+1)."""
    params = {"p": p, "M": M, "N": N}
    L = M ** (p + 1)
    b = beta(p, M, N).poly._padded(L)
    rhs = np.zeros_like(b)
    for k in range(min(p + 1, L - 1) + 1):
        c = (-1) ** k * comb(p + 1, k)
        rhs[k:] = rhs[k:] + c * b[: L - k]
    lhs = xi_power_table(M)[_residues(M, N, L)].astype(object)
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    if len(bad) == 0:
        return IdentityReport("convolution-inverse", params, True)
    n = int(bad[0])
    diff = CyclotomicNumber(M, list(lhs[n] - rhs[n]), reduced=True)
    return IdentityReport("convolution-inverse", params, False, f"index {n}: {diff}")


def verify_convolutions(p: int, M: int, N: int) -> list[IdentityReport]:
    return [verify_convolution_forward(p, M, N), verify_convolution_inverse(p, M, N)]


def verify_moment0(p: int, M: int, N: int) -> IdentityReport:
    m0, _ = _moments(p, M, N)
    return _report("moment-0", {"p": p, "M": M, "N": N}, m0, moment0_formula(p, M, N))


def verify_moment1(p: int, M: int, N: int) -> IdentityReport:
    _, m1 = _moments(p, M, N)
    return _report("moment-1", {"p": p, "M": M, "N": N}, m1, moment1_formula(p, M, N))


# -- finite-difference identities -----------------------------------------------------

def _idx(name: str, j: int) -> str:
    return f"_{name}{j}"


def _linear_argument(x: str, ys, index_names):
    variables = (x,) + tuple(ys) + tuple(index_names)
    arg = MultiPoly.var(x, variables)
    for y, n in zip(ys, index_names):
        arg = arg + MultiPoly.var(y, variables) * MultiPoly.var(n, variables)
    return arg


@lru_cache(maxsize=1024)
def _lhs_power(x: str, ys: tuple, d: int) -> MultiPoly:
    """(x + sum_j n_j y_j)**d with internal index names."""
    ns = tuple(_idx("n", j) for j in range(len(ys)))
    return _linear_argument(x, ys, ns) ** d


@lru_cache(maxsize=1024)
def _rhs_power(x: str, ys: tuple, orders: tuple, arg: str, d: int) -> MultiPoly:
    """(prod_j Delta_{y_j}^{orders_j} u**d) evaluated at u = x + sum_j k_j y_j."""
    variables = (arg,) + tuple(ys)
    g = MultiPoly.var(arg, variables) ** d
    for y, order in zip(ys, orders):
        g = finite_difference(g, arg, MultiPoly.var(y, variables), order)
    ks = tuple(_idx("k", j) for j in range(len(ys)))
    return g.substitute({arg: _linear_argument(x, ys, ks)})


def _compose(f: MultiPoly, arg: str, power_of) -> MultiPoly:
    """Sum over the terms of f of (rest of term) * power_of(exponent of arg)."""
    if arg not in f.variables:
        return f * power_of(0)
    i = f.variables.index(arg)
    rest_vars = tuple(v for v in f.variables if v != arg)
    groups: dict = {}
    for exp, c in f.terms.items():
        rest = exp[:i] + exp[i + 1:]
        groups.setdefault(exp[i], {})[rest] = c
    out = None
    for d, terms in groups.items():
        part = MultiPoly(rest_vars, terms) * power_of(d)
        out = part if out is None else out + part
    return out


def _check_f(f: MultiPoly, arg: str, reserved) -> None:
    clash = [v for v in f.used_variables() if v in reserved or v.startswith("_")]
    if clash:
        raise InvalidParametersError(f"f may not use the variables {clash}")


def _sampled_points(variables, degree):
    return itertools.product(range(degree + 1), repeat=len(variables))


@lru_cache(maxsize=4096)
def _fd_power_sides(p_list, M, N, x, ys, arg, d):
    """Both sides of the finite-difference identity for f = u**d, fully summed."""
    lhs = _lhs_power(x, ys, d)
    for j, p in enumerate(p_list):
        L = M ** (p + 1)
        lhs = sum_over(lhs, [_idx("n", j)], [(n,) for n in range(L)], _xi_weights(M, N, L))
    orders = tuple(p + 1 for p in p_list)
    rhs = _rhs_power(x, ys, orders, arg, d)
    for j, p in enumerate(p_list):
        b = beta(p, M, N)
        rhs = sum_over(rhs, [_idx("k", j)], [(k,) for k in range(len(b))], b.coeffs)
    D = sum(orders)
    return lhs, rhs * (-1) ** D


def _fd_sides_symbolic(p_list, M, N, f, arg, x, ys):
    # both sides are linear in f, so each power of the argument is summed once and cached
    lhs = _compose(f, arg, lambda d: _fd_power_sides(p_list, M, N, x, ys, arg, d)[0])
    rhs = _compose(f, arg, lambda d: _fd_power_sides(p_list, M, N, x, ys, arg, d)[1])
    return lhs.trimmed(), rhs.trimmed()


def _literal_fd_lhs(p_list, M, N, f, arg, x, ys, point):
    """Literal r-fold sum at a numeric point {x: .., y_j: ..}."""
    ranges = [range(M ** (p + 1)) for p in p_list]
    shifts = [_shift_values(M, N, M ** (p + 1)) for p in p_list]
    acc = [0] * M
    xv = point[x]
    yv = [point[y] for y in ys]
    for ns in itertools.product(*ranges):
        u = xv + sum(n * y for n, y in zip(ns, yv))
        e = sum(s[n] for s, n in zip(shifts, ns)) % M
        acc[e] = acc[e] + f.evaluate({arg: u} | {v: point[v] for v in f.used_variables() if v != arg})
    total = CyclotomicNumber.zero(M)
    for e, a in enumerate(acc):
        if a:
            total = total + xi_power(M, e) * a
    return total


def _choose_mode(mode, n_vars, degree):
    """Requested mode, or ``sampled`` when a symbolic expansion would exceed the term cap.

    The expansion of a linear form in ``n_vars`` variables to power ``degree``
    has C(degree + n_vars - 1, n_vars - 1) terms.
    """
    cfg = get_config()
    mode = mode or cfg.mode
    if mode == "symbolic" and comb(degree + n_vars - 1, n_vars - 1) > cfg.symbolic_term_cap:
        return "sampled"
    return mode


def _fd_report(identity, p_list, M, N, f, arg, x, ys, mode):
    mode = _choose_mode(mode, 1 + 2 * len(p_list), max(f.degree(arg), 0))
    p_param = p_list[0] if identity == "fd-single" else list(p_list)
    params = {"p": p_param, "M": M, "N": N, "f": str(f), "mode": mode}
    if mode == "symbolic":
        lhs, rhs = _fd_sides_symbolic(p_list, M, N, f, arg, x, ys)
        return _report(identity, params, lhs, rhs)
    # sampled: literal LHS at grid points against the symbolic RHS
    _, rhs = _fd_sides_symbolic(p_list, M, N, f, arg, x, ys)
    deg = max(f.degree(), 0)
    variables = (x,) + tuple(ys)
    for pt in _sampled_points(variables, deg):
        point = dict(zip(variables, pt))
        lhs_v = _literal_fd_lhs(p_list, M, N, f, arg, x, ys, point)
        rhs_v = rhs.evaluate({v: point[v] for v in rhs.used_variables()}) if rhs else 0
        if lhs_v != rhs_v:
            return IdentityReport(identity, params, False, f"at {point}: {lhs_v - rhs_v}")
    return IdentityReport(identity, params, True)


def verify_fd_single(p: int, M: int, N: int, f: MultiPoly, x: str = "x", y: str = "y",
                     arg: str = "u", mode: str | None = None) -> IdentityReport:
    """sum_n xi**B(n) f(x + n y) == (-1)**(p+1) sum_k beta_k Delta_y**(p+1) f(x + k y)."""
    check_parameters(p, M, N)
    _check_f(f, arg, {x, y})
    return _fd_report("fd-single", (p,), M, N, f, arg, x, (y,), mode)


def verify_fd_multi(p_list, M: int, N: int, f: MultiPoly, y_symbols=None, x: str = "x",
                    arg: str = "u", mode: str | None = None) -> IdentityReport:
    """r-fold version: weights multiply, differences are iterated one per y_j."""
    p_list = _check_p_list(p_list, M, N)
    ys = tuple(y_symbols) if y_symbols else tuple(f"y{j + 1}" for j in range(len(p_list)))
    if len(ys) != len(p_list):
        raise InvalidParametersError("need one y symbol per p_j")
    _check_f(f, arg, {x, *ys})
    return _fd_report("fd-multi", p_list, M, N, f, arg, x, ys, mode)


def random_polynomial(degree: int, rng: random.Random, arg: str = "u", bound: int = 9) -> MultiPoly:
    """Random polynomial in ``arg`` of exactly the given degree with small rational coefficients."""
    terms = {}
    for d in range(degree + 1):
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
        if d == degree and c == 0:
            c = Fraction(1)
        terms[(d,)] = c
    return MultiPoly((arg,), terms)


# -- weighted polynomial sums -----------------------------------------------------------

def poly_vanishing_sum(p: int, M: int, N: int, a: int, b: int) -> CyclotomicNumber:
    """sum_{n < M**p} n**a * B(n)**b * xi**B(n)."""
    check_parameters(p, M, N)
    L = M**p
    shifts = _shift_values(M, N, L)
    counts = [0] * M
    for n, v in enumerate(shifts):
        counts[v % M] += n**a * v**b
    from .cyclotomic import from_residue_counts

    return from_residue_counts(M, counts)


def verify_poly_vanishing(p: int, M: int, N: int, a: int, b: int) -> IdentityReport:
    if p < 1 or a < 0 or b < 0 or a + b > p - 1:
        raise InvalidParametersError(f"need p >= 1 and a + b <= p - 1; got p={p}, a={a}, b={b}")
    val = poly_vanishing_sum(p, M, N, a, b)
    return _report("poly-vanishing", {"p": p, "M": M, "N": N, "a": a, "b": b}, val, 0)


@lru_cache(maxsize=256)
def _pair_power(x: str, y: str, l: int) -> MultiPoly:
    """(B x + n y)**l over variables (x, y, _B, _n)."""
    X, Y, B, Nv = MultiPoly.vars(x, y, "_B", "_n")
    return (B * X + Nv * Y) ** l


def _pair_points(M, N, p):
    L = M ** (p + 1)
    shifts = _shift_values(M, N, L)
    return [(s, n) for n, s in enumerate(shifts)], _xi_weights(M, N, L)


def S_pl(p: int, l: int, M: int, N: int, x: str = "x", y: str = "y") -> MultiPoly:
    """S_{p,l}(x, y) = sum_{n < M**(p+1)} xi**B(n) (B(n) x + n y)**l."""
    check_parameters(p, M, N)
    if l < 0:
        raise InvalidParametersError("l must be natural")
    pts, w = _pair_points(M, N, p)
    return sum_over(_pair_power(x, y, l), ["_B", "_n"], pts, w).with_variables((x, y))


def S_closed_form(p: int, M: int, N: int, x: str = "x", y: str = "y") -> MultiPoly:
    """(-1)**(p+1) (p+1)! M**(p+1) prod_j (N**j x + M**j y) / prod_j (1 - xi**(N**j))."""
    X, Y = MultiPoly.vars(x, y)
    lin = MultiPoly.constant(1, (x, y))
    for j in range(p + 1):
        lin = lin * (N**j * X + M**j * Y)
    c = (-1) ** (p + 1) * factorial(p + 1) * M ** (p + 1) * _inv_one_minus_xi_product(M, N, p)
    return lin * c


def _literal_S(p, l, M, N, point, x="x", y="y"):
    L = M ** (p + 1)
    shifts = _shift_values(M, N, L)
    acc = [0] * M
    for n, s in enumerate(shifts):
        acc[s % M] += (s * point[x] + n * point[y]) ** l
    from .cyclotomic import from_residue_counts

    return from_residue_counts(M, acc)


def verify_S_closed_form(p: int, M: int, N: int, mode: str | None = None) -> IdentityReport:
    """S_{p,p+1} against its closed form, plus S_{p,l} == 0 for every l <= p."""
    check_parameters(p, M, N)
    mode = mode or get_config().mode
    params = {"p": p, "M": M, "N": N, "mode": mode}
    for l in range(p + 1):
        s = S_pl(p, l, M, N)
        if not s.is_zero():
            return IdentityReport("S_pl-closed-form", params, False, f"S_{{{p},{l}}} = {s}")
    rhs = S_closed_form(p, M, N)
    if mode == "symbolic":
        return _report("S_pl-closed-form", params, S_pl(p, p + 1, M, N), rhs)
    for pt in _sampled_points(("x", "y"), p + 1):
        point = {"x": pt[0], "y": pt[1]}
        lhs_v = _literal_S(p, p + 1, M, N, point)
        rhs_v = rhs.evaluate(point) if rhs else 0
        if lhs_v != rhs_v:
            return IdentityReport("S_pl-closed-form", params, False, f"at {point}: {lhs_v - rhs_v}")
    return IdentityReport("S_pl-closed-form", params, True)


# -- the two multivariate closed forms ------------------------------------------------------

def first_closed_form_rhs(p_list, M: int, N: int, ys=None) -> MultiPoly:
    p_list = tuple(p_list)
    ys = tuple(ys) if ys else tuple(f"y{j + 1}" for j in range(len(p_list)))
    D = sum(p + 1 for p in p_list)
    c = CyclotomicNumber.from_rational(M, (-1) ** D * factorial(D))
    for p in p_list:
        c = c * moment0_formula(p, M, N)
    exp = tuple(p + 1 for p in p_list)
    return MultiPoly(ys, {exp: c})


def _first_lhs(p_list, M, N, x, ys):
    D = sum(p + 1 for p in p_list)
    lhs = _lhs_power(x, ys, D)
    for j, p in enumerate(p_list):
        L = M ** (p + 1)
        lhs = sum_over(lhs, [_idx("n", j)], [(n,) for n in range(L)], _xi_weights(M, N, L))
    return lhs.trimmed()


def verify_first_closed_form(p_list, M: int, N: int, mode: str | None = None) -> IdentityReport:
    """r-fold sum of xi**(sum B(n_j)) (x + sum n_j y_j)**D against its constant closed form.

    Also asserts that the expanded left-hand side does not involve x.
    """
    p_list = _check_p_list(p_list, M, N)
    mode = _choose_mode(mode, 1 + 2 * len(p_list), sum(p + 1 for p in p_list))
    ys = tuple(f"y{j + 1}" for j in range(len(p_list)))
    rhs = first_closed_form_rhs(p_list, M, N, ys)
    params = {"p": list(p_list), "M": M, "N": N, "mode": mode}
    if mode == "symbolic":
        lhs = _first_lhs(p_list, M, N, "x", ys)
        if lhs.involves("x"):
            return IdentityReport("first-closed-form", params, False,
                                  f"left-hand side depends on x: {lhs}", {"x_free": False})
        rep = _report("first-closed-form", params, lhs, rhs)
        rep.details["x_free"] = True
        return rep
    D = sum(p + 1 for p in p_list)
    f = MultiPoly.var("u") ** D
    for pt in _sampled_points(("x",) + ys, D):
        point = dict(zip(("x",) + ys, pt))
        lhs_v = _literal_fd_lhs(p_list, M, N, f, "u", "x", ys, point)
        rhs_v = rhs.evaluate(point)
        if lhs_v != rhs_v:
            return IdentityReport("first-closed-form", params, False, f"at {point}: {lhs_v - rhs_v}")
    return IdentityReport("first-closed-form", params, True)


def second_closed_form_rhs(p_list, M: int, N: int) -> MultiPoly:
    p_list = tuple(p_list)
    r = len(p_list)
    names = tuple(v for j in range(r) for v in (f"x{j + 1}", f"y{j + 1}"))
    D = sum(p + 1 for p in p_list)
    poly = MultiPoly.constant(1, names)
    c = CyclotomicNumber.from_rational(M, (-1) ** D * factorial(D) * M**D)
    for j, p in enumerate(p_list):
        X = MultiPoly.var(f"x{j + 1}", names)
        Y = MultiPoly.var(f"y{j + 1}", names)
        for i in range(p + 1):
            poly = poly * (N**i * X + M**i * Y)
        c = c * _inv_one_minus_xi_product(M, N, p)
    return poly * c


@lru_cache(maxsize=256)
def _second_lhs_power(r: int, D: int) -> MultiPoly:
    names = tuple(v for j in range(r) for v in (f"x{j + 1}", f"y{j + 1}", f"_B{j}", f"_n{j}"))
    s = MultiPoly(names)
    for j in range(r):
        X, Y, B, Nv = (MultiPoly.var(v, names) for v in (f"x{j + 1}", f"y{j + 1}", f"_B{j}", f"_n{j}"))
        s = s + B * X + Nv * Y
    return s**D


def _second_lhs(p_list, M, N):
    D = sum(p + 1 for p in p_list)
    lhs = _second_lhs_power(len(p_list), D)
    for j, p in enumerate(p_list):
        pts, w = _pair_points(M, N, p)
        lhs = sum_over(lhs, [f"_B{j}", f"_n{j}"], pts, w)
    return lhs.trimmed()


def second_form_collapse(p1: int, p2: int, M: int, N: int) -> dict[int, bool]:
    """For r = 2: whether S_{p1,k}(x1,y1) * S_{p2,D-k}(x2,y2) vanishes, for each k <= D."""
    D = p1 + p2 + 2
    out = {}
    for k in range(D + 1):
        prod_k = S_pl(p1, k, M, N, "x1", "y1") * S_pl(p2, D - k, M, N, "x2", "y2")
        out[k] = prod_k.is_zero()
    return out


def verify_second_closed_form(p_list, M: int, N: int, mode: str | None = None) -> IdentityReport:
    """r-fold sum of xi**(sum B(n_j)) (sum_j B(n_j) x_j + n_j y_j)**D against its closed form.

    For r == 2 the binomial collapse is checked too: only the k = p1 + 1 product survives.
    """
    p_list = _check_p_list(p_list, M, N)
    mode = _choose_mode(mode, 4 * len(p_list), sum(p + 1 for p in p_list))
    rhs = second_closed_form_rhs(p_list, M, N)
    params = {"p": list(p_list), "M": M, "N": N, "mode": mode}
    details = {}
    if len(p_list) == 2:
        collapse = second_form_collapse(*p_list, M, N)
        expected = {k: k != p_list[0] + 1 for k in collapse}
        details["collapse_ok"] = collapse == expected
        if collapse != expected:
            bad = [k for k in collapse if collapse[k] != expected[k]]
            return IdentityReport("second-closed-form", params, False,
                                  f"binomial collapse fails at k = {bad}", details)
    if mode == "symbolic":
        return _report("second-closed-form", params, _second_lhs(p_list, M, N), rhs, details)
    D = sum(p + 1 for p in p_list)
    names = rhs.variables
    r = len(p_list)
    ranges = [range(M ** (p + 1)) for p in p_list]
    shifts = [_shift_values(M, N, M ** (p + 1)) for p in p_list]
    for pt in _sampled_points(names, D):
        point = dict(zip(names, pt))
        acc = [0] * M
        for ns in itertools.product(*ranges):
            bs = [s[n] for s, n in zip(shifts, ns)]
            val = sum(bs[j] * point[f"x{j + 1}"] + ns[j] * point[f"y{j + 1}"] for j in range(r))
            acc[sum(bs) % M] += val**D
        from .cyclotomic import from_residue_counts

        lhs_v = from_residue_counts(M, acc)
        rhs_v = rhs.evaluate(point)
        if lhs_v != rhs_v:
            return IdentityReport("second-closed-form", params, False, f"at {point}: {lhs_v - rhs_v}", details)
    return IdentityReport("second-closed-form", params, True, None, details)


# -- batch ---------------------------------------------------------------------------------

def _valid_pairs(M_cap, N_cap):
    return [(M, N) for M in range(2, M_cap + 1) for N in range(1, N_cap + 1) if not radical_divides(M, N)]


def _p_tuples(r_cap, p_cap):
    for r in range(1, r_cap + 1):
        yield from itertools.combinations_with_replacement(range(p_cap + 1), r)


def verify_all(M_cap: int = 6, p_cap: int = 2, r_cap: int = 2, N_cap: int | None = None):
    """Yield an IdentityReport for every identity over the parameter grid.

    Grid: 2 <= M <= M_cap, 1 <= N <= N_cap (default M_cap) with rad(M) not
    dividing rad(N), 0 <= p <= p_cap, p-tuples of length <= r_cap.
    """
    N_cap = M_cap if N_cap is None else N_cap
    X = MultiPoly.var("u")
    for M, N in _valid_pairs(M_cap, N_cap):
        for p in range(p_cap + 1):
            yield verify_G_multiplicity(p, M, N)
            yield verify_S_k_vanishing(p, M, N)
            yield from verify_convolutions(p, M, N)
            yield verify_moment0(p, M, N)
            yield verify_moment1(p, M, N)
            yield verify_S_closed_form(p, M, N)
            for a in range(p):
                for b in range(p - a):
                    yield verify_poly_vanishing(p, M, N, a, b)
        for ps in _p_tuples(r_cap, p_cap):
            D = sum(q + 1 for q in ps)
            if len(ps) == 1:
                yield verify_fd_single(ps[0], M, N, X ** (D + 2) + X ** D)
            else:
                yield verify_fd_multi(ps, M, N, X ** (D + 2) + X ** D)
            yield verify_first_closed_form(ps, M, N)
            yield verify_second_closed_form(ps, M, N)
