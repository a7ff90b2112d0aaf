import io
import json

import pytest
from hypothesis import given, strategies as st

from shiftdigits.digitmap import InvalidInputError, b_sequence, radical
from shiftdigits.periodicity import (
    NotPeriodicError,
    analyze,
    conjecture_formula,
    conjecture_scan,
    is_period,
    is_ultimately_periodic,
    minimal_period_bruteforce,
    minimal_period_formula_prime_power,
    necessity_probe,
    period_bounds,
    t_bar,
)


def literal_minimal_period(M, N, length):
    """Independent oracle: smallest P with seq[n + P] == seq[n] over a long prefix."""
    seq = list(b_sequence(length, M, N))
    half = length // 2
    for P in range(1, half):
        if all(seq[n + P] == seq[n] for n in range(half)):
            return P
    return None


@pytest.mark.parametrize("M, N, expected", [(6, 12, True), (2, 1, False), (9, 3, True), (10, 4, False)])
def test_criterion_examples(M, N, expected):
    assert is_ultimately_periodic(M, N) is expected


@pytest.mark.parametrize("M, N, expected", [(4, 2, 8), (2, 2, 2), (6, 6, 6), (8, 4, 16), (12, 6, 24), (36, 6, 216)])
def test_bruteforce_examples(M, N, expected):
    assert minimal_period_bruteforce(M, N) == expected


def test_sequence_for_4_2_repeats_every_8_not_4():
    seq = list(b_sequence(32, 4, 2))
    assert seq[:8] == [0, 1, 2, 3, 2, 3, 0, 1]
    assert seq[8:16] == seq[:8] and seq[4:8] != seq[:4]


@pytest.mark.parametrize("p, a, b, expected", [(2, 2, 1, 8), (3, 1, 1, 3), (2, 3, 2, 16)])
def test_prime_power_formula_examples(p, a, b, expected):
    assert minimal_period_formula_prime_power(p, a, b) == expected


def test_prime_power_formula_matches_oracle_for_8_4():
    assert minimal_period_formula_prime_power(2, 3, 2) == literal_minimal_period(8, 4, 256)


@pytest.mark.parametrize("M, N, expected", [(4, 2, (4, 16)), (6, 6, (6, 6)), (12, 6, (12, 144))])
def test_bounds_examples(M, N, expected):
    assert period_bounds(M, N) == expected


def test_conjecture_formula_examples():
    assert conjecture_formula(4, 2) == 8
    assert conjecture_formula(36, 6) == 216 == minimal_period_bruteforce(36, 6)
    assert conjecture_formula(8, 2) is None


def test_errors():
    with pytest.raises(NotPeriodicError):
        minimal_period_bruteforce(2, 1)
    with pytest.raises(NotPeriodicError):
        t_bar(6, 4)
    with pytest.raises(InvalidInputError):
        minimal_period_formula_prime_power(4, 1, 1)


@pytest.mark.parametrize("M", range(2, 11))
def test_bruteforce_matches_literal_oracle(M):
    for k in range(1, 9):
        N = radical(M) * k
        expected = literal_minimal_period(M, N, 4 * M ** t_bar(M, N) + 8)
        assert minimal_period_bruteforce(M, N) == expected


@pytest.mark.parametrize("M, N", [(4, 2), (8, 2), (12, 6), (9, 3), (18, 6), (16, 4)])
def test_automaton_agrees_with_window(M, N):
    hi = period_bounds(M, N)[1]
    for P in range(1, min(hi, 400) + 1):
        assert is_period(M, N, P, "window") == is_period(M, N, P, "automaton")


def test_large_window_uses_automaton():
    # 2**31 would need a 2**31-long window; the automaton handles it exactly
    assert minimal_period_bruteforce(64, 2) == 2**31 == minimal_period_formula_prime_power(2, 6, 1)


@given(st.integers(2, 16), st.integers(1, 6))
def test_period_inside_bounds(M, k):
    N = radical(M) * k
    lo, hi = period_bounds(M, N)
    P = minimal_period_bruteforce(M, N)
    assert lo <= P <= hi and hi % P == 0


def test_necessity_probe():
    assert necessity_probe(2, 1) is None
    assert necessity_probe(6, 4) is None
    assert necessity_probe(4, 2) == 8


def test_analyze_report():
    rep = analyze(4, 2)
    assert rep.periodic and rep.purely_periodic and rep.agreement == "match"
    assert rep.formula_source == "prime-power" and not rep.theorem_violation
    assert json.loads(json.dumps(rep.to_json())) == rep.to_json()
    assert analyze(36, 6).formula_source == "conjecture"
    assert analyze(8, 2).formula_period == 128 and analyze(8, 2).formula_source == "prime-power"
    assert analyze(2, 1).to_json()["periodic"] is False


def test_scan_records_and_skips():
    sink = io.StringIO()
    report = conjecture_scan([8, 12], N_limit=40, sink=sink)
    lines = [json.loads(l) for l in sink.getvalue().splitlines()]
    assert lines[-1]["summary"] is True and lines[-1]["mismatches"] == 0
    assert (8, 2) in report.skipped
    pairs = [(r["M"], r["N"]) for r in lines[:-1]]
    assert pairs == sorted(pairs)
    assert all(r["match"] for r in lines[:-1])


def test_scan_empty_and_capped():
    assert conjecture_scan([], N_limit=10).records == []
    with pytest.raises(InvalidInputError):
        conjecture_scan([21], N_limit=10)


def test_scan_parallel_is_deterministic():
    a, b = io.StringIO(), io.StringIO()
    conjecture_scan(range(2, 9), N_limit=60, sink=a)
    conjecture_scan(range(2, 9), N_limit=60, sink=b, workers=2)
    assert a.getvalue() == b.getvalue()
