"""Periodicity of b(n) = B_{M,N}(n) mod M.

When every prime factor of M divides N, N**t_bar is divisible by M, so b(n)
only depends on the lowest t_bar base-M digits of n, i.e. on n mod M**t_bar.
All exact period checks below lean on that: a candidate period is verified
over one full residue window and then holds for every n >= 0.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import prod

import numpy as np

from .digitmap import (
    InvalidInputError,
    b_sequence,
    divisors,
    factorize,
    is_prime,
    radical_divides,
)

log = logging.getLogger(__name__)

__all__ = [
    "NotPeriodicError",
    "PeriodReport",
    "ScanRecord",
    "ScanReport",
    "is_ultimately_periodic",
    "prime_exponents",
    "t_bar",
    "period_bounds",
    "is_period",
    "minimal_period_bruteforce",
    "minimal_period_formula_prime_power",
    "conjecture_formula",
    "necessity_probe",
    "analyze",
    "conjecture_scan",
]

# windows longer than this are checked with the digit automaton instead of an array
WINDOW_LIMIT = 1 << 21


class NotPeriodicError(ValueError):
    pass


def is_ultimately_periodic(M: int, N: int) -> bool:
    return radical_divides(M, N)


def prime_exponents(M: int, N: int) -> dict[int, tuple[int, int]]:
    """``{p: (a_p, b_p)}`` over the primes p dividing M, with v_p(M) = a_p, v_p(N) = b_p."""
    fm = factorize(M)
    out = {}
    for p, a in fm.items():
        b, n = 0, N
        while n % p == 0:
            n //= p
            b += 1
        out[p] = (a, b)
    return out


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def t_bar(M: int, N: int) -> int:
    """max over p | M of ceil(a_p / b_p); requires rad(M) | rad(N)."""
    if not is_ultimately_periodic(M, N):
        raise NotPeriodicError(f"b(n) is not periodic for (M, N) = ({M}, {N})")
    return max(_ceil_div(a, b) for a, b in prime_exponents(M, N).values())


def period_bounds(M: int, N: int) -> tuple[int, int]:
    return M, M ** t_bar(M, N)


# -- exact period checks -------------------------------------------------------

def _is_period_window(M: int, N: int, P: int, window: int) -> bool:
    seq = b_sequence(window + P, M, N)
    return bool(np.array_equal(seq[P:], seq[:window]))


def _is_period_automaton(M: int, N: int, P: int, t: int) -> bool:
    """Exhaustive check over all n in [0, M**t) that B(n+P) == B(n) mod M.

    Walks the base-M addition n + P digit by digit with state
    (carry, accumulated difference mod M).  Digits at positions >= t carry
    weight N**i == 0 mod M and are ignored, which is why the carry out of
    position t - 1 can be dropped.
    """
    pdigits = []
    q = P % M**t
    for _ in range(t):
        q, d = divmod(q, M)
        pdigits.append(d)
    states = {(0, 0)}
    w = 1
    for i in range(t):
        nxt = set()
        pi = pdigits[i]
        for carry, diff in states:
            for d in range(M):
                s = d + pi + carry
                nd, nc = s % M, s // M
                nxt.add((nc, (diff + (nd - d) * w) % M))
        states = nxt
        w = w * N % M
    return all(diff == 0 for _, diff in states)


def is_period(M: int, N: int, P: int, method: str = "auto") -> bool:
    """Whether b(n + P) == b(n) for every n >= 0 (periodic pairs only)."""
    t = t_bar(M, N)
    window = M**t
    if method == "auto":
        method = "window" if window <= WINDOW_LIMIT else "automaton"
    if method == "window":
        return _is_period_window(M, N, P, window)
    if method == "automaton":
        return _is_period_automaton(M, N, P, t)
    raise ValueError(f"unknown method {method!r}")


def minimal_period_bruteforce(M: int, N: int, method: str = "auto") -> int:
    """Smallest P with b(n + P) == b(n) for all n >= 0.

    Candidates are the divisors of M**t_bar in increasing order; M**t_bar is
    always a period, so the first divisor that passes is the minimal one.
    """
    if not is_ultimately_periodic(M, N):
        raise NotPeriodicError(f"b(n) is not periodic for (M, N) = ({M}, {N})")
    t = t_bar(M, N)
    for P in divisors(M**t):
        if is_period(M, N, P, method):
            return P
    raise AssertionError("M**t_bar failed as a period")  # pragma: no cover


def minimal_period_formula_prime_power(p: int, a: int, b: int) -> int:
    """p**e with e = a*t - b*(t - 1), t = ceil(a / b), for M = p**a, N = p**b."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if a < 1 or b < 1:
        raise InvalidInputError("exponents must be >= 1")
    t = _ceil_div(a, b)
    return p ** (a * t - b * (t - 1))


def conjecture_formula(M: int, N: int) -> int | None:
    """Product of p**e_p when every t_p <= 2, else None."""
    if not is_ultimately_periodic(M, N):
        raise NotPeriodicError(f"b(n) is not periodic for (M, N) = ({M}, {N})")
    exps = prime_exponents(M, N)
    ts = {p: _ceil_div(a, b) for p, (a, b) in exps.items()}
    if any(t > 2 for t in ts.values()):
        return None
    return prod(p ** (a * ts[p] - b * (ts[p] - 1)) for p, (a, b) in exps.items())


def _prime_power_exponents(M: int, N: int):
    fm, fn = factorize(M), factorize(N)
    if len(fm) == 1 and set(fn) == set(fm):
        (p, a), = fm.items()
        return p, a, fn[p]
    return None


def necessity_probe(M: int, N: int) -> int | None:
    """Finite-window proxy for the non-periodic direction.

    Searches P <= cap = M**t + M**2 for b(n + P) == b(n) on every n in
    [0, 4*cap), with t = max ceil(a_p / b_p) over the primes of M that do
    divide N (1 if none).  Returns the first such P or None.  A None result is
    evidence, not proof, that the sequence is not ultimately periodic.
    """
    shared = [(a, b) for a, b in prime_exponents(M, N).values() if b]
    t = max((_ceil_div(a, b) for a, b in shared), default=1)
    cap = M**t + M**2
    window = 4 * cap
    seq = b_sequence(window + cap, M, N)
    head = seq[:window]
    for P in range(1, cap + 1):
        if np.array_equal(seq[P : P + window], head):
            return P
    return None


# -- reports -------------------------------------------------------------------

@dataclass
class PeriodReport:
    M: int
    N: int
    periodic: bool
    minimal_period: int | None = None
    purely_periodic: bool | None = None
    formula_period: int | None = None
    formula_source: str | None = None
    lower_bound: int | None = None
    upper_bound: int | None = None
    agreement: str = "not-applicable"

    def to_json(self) -> dict:
        return asdict(self)

    @property
    def theorem_violation(self) -> bool:
        """A mismatch against the proven prime-power formula, or a bound failure."""
        if not self.periodic:
            return False
        if self.formula_source == "prime-power" and self.agreement == "mismatch":
            return True
        return not (self.lower_bound <= self.minimal_period <= self.upper_bound)


def analyze(M: int, N: int, method: str = "auto") -> PeriodReport:
    """Criterion, bounds, formula prediction and brute-force period for one pair."""
    if not is_ultimately_periodic(M, N):
        return PeriodReport(M, N, periodic=False)
    lo, hi = period_bounds(M, N)
    P = minimal_period_bruteforce(M, N, method)
    rep = PeriodReport(M, N, True, P, lower_bound=lo, upper_bound=hi)
    # b depends only on n mod M**t_bar, so a period verified over [0, M**t_bar) holds from n = 0
    rep.purely_periodic = is_period(M, N, P, method)
    pp = _prime_power_exponents(M, N)
    if pp is not None:
        rep.formula_period = minimal_period_formula_prime_power(*pp)
        rep.formula_source = "prime-power"
    else:
        rep.formula_period = conjecture_formula(M, N)
        rep.formula_source = "conjecture" if rep.formula_period is not None else None
    if rep.formula_period is not None:
        rep.agreement = "match" if rep.formula_period == P else "mismatch"
    return rep


# -- conjecture scan -----------------------------------------------------------

@dataclass
class ScanRecord:
    M: int
    N: int
    predicted: int
    observed: int
    match: bool

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class ScanReport:
    records: list[ScanRecord] = field(default_factory=list)
    skipped: list[tuple[int, int]] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[ScanRecord]:
        return [r for r in self.records if not r.match]

    def summary(self) -> dict:
        return {
            "summary": True,
            "pairs": len(self.records),
            "matches": sum(r.match for r in self.records),
            "mismatches": len(self.counterexamples),
            "skipped_not_applicable": len(self.skipped),
            "counterexamples": [[r.M, r.N] for r in self.counterexamples],
        }


def _scan_pair(pair):
    M, N = pair
    predicted = conjecture_formula(M, N)
    if predicted is None:
        return pair, None
    observed = minimal_period_bruteforce(M, N)
    return pair, ScanRecord(M, N, predicted, observed, predicted == observed)


def conjecture_scan(M_values, N_limit: int = 400, sink=None, workers: int = 1,
                    N_rule=None, M_cap: int | None = None) -> ScanReport:
    """Compare the conjectured period with brute force over a parameter range.

    ``N_rule(M)`` may supply the N values for each M; by default every N in
    [1, N_limit] with rad(M) | rad(N) is used.  Pairs with some t_p > 2 are
    skipped as not applicable.  Records are written to ``sink`` (a text file
    object) as JSON lines in (M, N) order, followed by one summary line.
    """
    from .config import get_config

    cap = get_config().scan_M_cap if M_cap is None else M_cap
    pairs = []
    for M in M_values:
        if M > cap:
            raise InvalidInputError(f"M = {M} exceeds the scan cap {cap}")
        Ns = N_rule(M) if N_rule is not None else range(1, N_limit + 1)
        pairs.extend((M, N) for N in Ns if is_ultimately_periodic(M, N))
    pairs.sort()
    if workers > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_pair, pairs, chunksize=16))
    else:
        results = [_scan_pair(p) for p in pairs]
    # deterministic merge regardless of completion order
    results.sort(key=lambda r: r[0])
    report = ScanReport()
    for pair, rec in results:
        if rec is None:
            report.skipped.append(pair)
            continue
        report.records.append(rec)
        if sink is not None:
            sink.write(json.dumps(rec.to_json()) + "\n")
    if sink is not None:
        sink.write(json.dumps(report.summary()) + "\n")
    for rec in report.counterexamples:
        log.warning("COUNTEREXAMPLE to the period conjecture: M=%d N=%d predicted=%d observed=%d",
                    rec.M, rec.N, rec.predicted, rec.observed)
    return report
