"""Acceptance sweeps, one test per criterion.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line (visible in ``pytest -v``
output and when the file is run directly with ``python tests/test_acceptance.py``).
"""

import io
import itertools
import random
import sys
import time
from math import gcd

import numpy as np
import pytest

from shiftdigits import identities as ids
from shiftdigits.digitmap import b_sequence, euler_phi, is_prime, radical_divides
from shiftdigits.periodicity import (
    analyze,
    conjecture_scan,
    is_ultimately_periodic,
    minimal_period_bruteforce,
    minimal_period_formula_prime_power,
    necessity_probe,
    period_bounds,
    t_bar,
)
from shiftdigits.polyring import MultiPoly
from shiftdigits.pte import build_partition, certify, enumerate_solutions

pytestmark = pytest.mark.slow

PAIRS_1 = [(M, N) for M in range(2, 13) for N in range(1, 25)]
GRID_5 = [(M, N) for M in range(2, 11) for N in range(1, 11) if not radical_divides(M, N)]
SMALL = [(M, N) for M in range(2, 7) for N in range(1, 7) if not radical_divides(M, N)]


_capture = {}


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    _capture["capsys"] = capsys
    yield
    _capture.clear()


def _say(text):
    with _capture["capsys"].disabled():
        print(text, flush=True)


def _line(number, title, ok, seconds, detail=""):
    status = "PASS" if ok else "FAIL"
    text = f"[{status}] criterion {number:>2}: {title} ({seconds:.1f}s){' - ' + detail if detail else ''}"
    _say("\n" + text)
    return text


def _finish(number, title, start, failures, limit=None, detail=""):
    elapsed = time.perf_counter() - start
    ok = not failures and (limit is None or elapsed < limit)
    if limit is not None and elapsed >= limit:
        detail = f"exceeded {limit}s " + detail
    if failures:
        detail = f"{len(failures)} failures, first {failures[:3]} " + detail
    _line(number, title, ok, elapsed, detail.strip())
    assert ok, detail


def _literal_is_period(M, N, P):
    """b(n + P) == b(n) on n < 3 * M**t_bar: b depends only on n mod M**t_bar."""
    W = M ** t_bar(M, N)
    seq = b_sequence(3 * W + P, M, N)
    return bool(np.array_equal(seq[P:], seq[: 3 * W]))


def test_criterion_01_periodicity_criterion():
    start = time.perf_counter()
    failures = []
    for M, N in PAIRS_1:
        if is_ultimately_periodic(M, N):
            P = minimal_period_bruteforce(M, N)
            if not _literal_is_period(M, N, P):
                failures.append((M, N, "claimed period fails"))
        elif necessity_probe(M, N) is not None:
            failures.append((M, N, "probe found a period"))
    _finish(1, "periodicity criterion, M<=12, N<=24", start, failures, 30)


def _prime_powers(limit):
    return [(p, a) for p in range(2, limit + 1) if is_prime(p) for a in range(1, 7) if p**a <= limit]


def test_criterion_02_prime_power_periods():
    start = time.perf_counter()
    failures = []
    count = 0
    for (p, a), (q, b) in itertools.product(_prime_powers(64), repeat=2):
        if p != q:
            continue
        M, N = p**a, p**b
        rep = analyze(M, N)
        count += 1
        formula = minimal_period_formula_prime_power(p, a, b)
        if rep.minimal_period != formula or not rep.purely_periodic:
            failures.append((M, N, rep.minimal_period, formula))
        # literal check from n = 0 where the residue window is small enough to enumerate
        if M ** t_bar(M, N) <= 1 << 18:
            if not _literal_is_period(M, N, formula) or (formula > 1 and formula % p == 0
                                                         and _literal_is_period(M, N, formula // p)):
                failures.append((M, N, "literal window"))
    _finish(2, "prime-power period formula vs brute force, M, N <= 64", start, failures, 60, f"{count} pairs")


def test_criterion_03_period_bounds():
    start = time.perf_counter()
    failures = []
    for M, N in PAIRS_1:
        if is_ultimately_periodic(M, N):
            lo, hi = period_bounds(M, N)
            P = minimal_period_bruteforce(M, N)
            if not (lo == M and hi == M ** t_bar(M, N) and lo <= P <= hi):
                failures.append((M, N, P, lo, hi))
    _finish(3, "minimal period within [M, M^t_bar]", start, failures)


def test_criterion_04_conjecture_scan():
    start = time.perf_counter()
    sink = io.StringIO()
    report = conjecture_scan(range(2, 21), N_limit=400, sink=sink)
    lines = sink.getvalue().splitlines()
    problems = []
    if len(lines) != len(report.records) + 1:
        problems.append("record count")
    for rec in report.counterexamples:
        _say(f"\n*** COUNTEREXAMPLE: M={rec.M} N={rec.N} predicted={rec.predicted} observed={rec.observed} ***")
    detail = (f"{len(report.records)} pairs, {len(report.counterexamples)} counterexamples, "
              f"{len(report.skipped)} not applicable")
    _finish(4, "period conjecture scan, M<=20, N<=400", start, problems, 300, detail)


def test_criterion_05_vanishing_and_multiplicity():
    start = time.perf_counter()
    failures = []
    for M, N in GRID_5:
        for p in range(4):
            G = ids.build_G(p, M, N)
            if G.root_multiplicity_at_one() < p + 1:
                failures.append((M, N, p, "multiplicity"))
            for k in range(p + 1):
                if not ids.power_sum_S(k, p, M, N).is_zero():
                    failures.append((M, N, p, k))
    _finish(5, "S_k = 0 for k <= p and (1-z)^(p+1) | G_p, M, N <= 10, p <= 3", start, failures, 60,
            f"{len(GRID_5)} pairs")


def test_criterion_06_pte():
    start = time.perf_counter()
    failures = []
    for M in range(2, 9):
        for p in range(1, 3):
            for N in range(1, M):
                cert = certify(build_partition(M, N, p))
                if cert.certified != (gcd(M, N) == 1):
                    failures.append((M, N, p))
            sols = enumerate_solutions(M, p)
            if len(sols) != euler_phi(M):
                failures.append((M, p, "count"))
            for a, b in itertools.combinations(sols, 2):
                if a.same_partition(b):
                    failures.append((M, p, a.N, b.N))
    classic = certify(build_partition(2, 1, 2))
    if classic.blocks != [[0, 3, 5, 6], [1, 2, 4, 7]] or classic.power_sums[1:] != [[14, 14], [70, 70]]:
        failures.append("classical instance")
    _finish(6, "equal power sum partitions, M <= 8, p <= 2", start, failures, 60)


def test_criterion_07_convolutions_and_moments():
    start = time.perf_counter()
    failures = []
    for M, N in GRID_5:
        for p in range(4):
            reports = ids.verify_convolutions(p, M, N) + [ids.verify_moment0(p, M, N), ids.verify_moment1(p, M, N)]
            failures += [(r.identity, M, N, p) for r in reports if not r.verified]
    _finish(7, "convolution identities and both moments, M, N <= 10, p <= 3", start, failures)


def _tuples(r_cap, p_cap):
    for r in range(1, r_cap + 1):
        yield from itertools.product(range(p_cap + 1), repeat=r)


def test_criterion_08_finite_difference_identities():
    start = time.perf_counter()
    failures = []
    u = MultiPoly.var("u")
    rng = random.Random(20240101)
    checks = 0
    for M, N in SMALL:
        for ps in _tuples(3, 2):
            D = sum(p + 1 for p in ps)
            fs = [u**d for d in range(D + 3)]
            fs += [ids.random_polynomial(rng.randint(0, D + 2), rng) for _ in range(20)]
            for f in fs:
                rep = ids.verify_fd_single(ps[0], M, N, f) if len(ps) == 1 else ids.verify_fd_multi(ps, M, N, f)
                checks += 1
                if not rep.verified:
                    failures.append((M, N, ps, str(f)))
    _finish(8, "finite-difference identities, r <= 3, p_j <= 2, M <= 6", start, failures, 300, f"{checks} checks")


def test_criterion_09_closed_forms():
    start = time.perf_counter()
    failures = []
    for M, N in SMALL:
        for p in range(3):
            for a in range(p):
                for b in range(p - a):
                    if not ids.verify_poly_vanishing(p, M, N, a, b).verified:
                        failures.append(("poly-vanishing", M, N, p, a, b))
            if not ids.verify_S_closed_form(p, M, N).verified:
                failures.append(("S_pl", M, N, p))
        for ps in _tuples(2, 2):
            first = ids.verify_first_closed_form(ps, M, N)
            if not (first.verified and first.details.get("x_free")):
                failures.append(("first", M, N, ps))
            second = ids.verify_second_closed_form(ps, M, N)
            if not second.verified or (len(ps) == 2 and not second.details.get("collapse_ok")):
                failures.append(("second", M, N, ps))
    _finish(9, "closed forms and weighted polynomial sums, M <= 6, p_j <= 2, r <= 2", start, failures, 600)


def test_criterion_10_beta_two_ways():
    start = time.perf_counter()
    failures = []
    for M, N in GRID_5:
        for p in range(4):
            if ids.beta(p, M, N).poly != ids.beta_by_convolution(p, M, N).poly:
                failures.append((M, N, p))
    _finish(10, "beta by division equals beta by convolution, M, N <= 10, p <= 3", start, failures)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
