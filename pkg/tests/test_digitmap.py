import pytest
from hypothesis import given, strategies as st

from shiftdigits.digitmap import (
    DigitVector,
    InvalidBaseError,
    InvalidInputError,
    b_mod,
    b_sequence,
    base_shift,
    base_shift_table,
    digits,
    divisors,
    euler_phi,
    factorize,
    from_digits,
    is_prime,
    radical,
    radical_divides,
)

bases = st.integers(2, 12)
targets = st.integers(1, 30)
naturals = st.integers(0, 10**12)


@pytest.mark.parametrize("n, M, expected", [(0, 2, []), (3, 2, [1, 1]), (123, 10, [3, 2, 1])])
def test_digits_examples(n, M, expected):
    assert list(digits(n, M)) == expected


@pytest.mark.parametrize("n, M, N, expected", [(3, 2, 4, 5), (123, 10, 1, 6), (9, 3, 2, 4)])
def test_base_shift_examples(n, M, N, expected):
    assert base_shift(n, M, N) == expected


@pytest.mark.parametrize("n, M, N, expected", [(4, 4, 2, 2), (0, 5, 3, 0), (7, 2, 1, 1)])
def test_b_mod_examples(n, M, N, expected):
    assert b_mod(n, M, N) == expected


@pytest.mark.parametrize("k, expected", [(12, 6), (1, 1), (8, 2), (2 * 3 * 3 * 7 * 7 * 7, 42)])
def test_radical(k, expected):
    assert radical(k) == expected


@pytest.mark.parametrize("M, N, expected", [(6, 12, True), (6, 4, False), (4, 2, True), (2, 1, False)])
def test_radical_divides(M, N, expected):
    assert radical_divides(M, N) is expected


def test_errors():
    with pytest.raises(InvalidBaseError):
        digits(5, 1)
    with pytest.raises(InvalidBaseError):
        base_shift(5, 0, 3)
    with pytest.raises(InvalidInputError):
        radical(0)
    with pytest.raises(ValueError):
        DigitVector(3, (1, 3))
    with pytest.raises(ValueError):
        DigitVector(3, (1, 0))


def test_digit_vector_roundtrip_and_zero():
    assert len(digits(0, 7)) == 0
    v = digits(1000, 7)
    assert v.value() == 1000
    assert v.value(radix=3) == base_shift(1000, 7, 3)


@given(naturals, bases)
def test_digits_reconstruct(n, M):
    v = digits(n, M)
    assert all(0 <= d < M for d in v)
    assert not v.digits or v.digits[-1] != 0
    assert from_digits(v, M) == n


@given(st.integers(0, 10**6), bases)
def test_identity_when_bases_equal(n, M):
    assert base_shift(n, M, M) == n


@given(naturals, naturals, st.integers(0, 8), bases, targets)
def test_digit_splitting(q, r, k, M, N):
    r %= M**k
    n = q * M**k + r
    assert base_shift(n, M, N) == base_shift(r, M, N) + N**k * base_shift(q, M, N)


@given(st.integers(0, 10**9), st.integers(1, 1000), bases, st.integers(0, 6))
def test_monotone_when_target_dominates(n, gap, M, extra):
    N = M + extra
    assert base_shift(n + gap, M, N) > base_shift(n, M, N)


@given(naturals, st.integers(2, 36), targets)
def test_b_mod_matches_full_value(n, M, N):
    assert b_mod(n, M, N) == base_shift(n, M, N) % M


@given(naturals, st.integers(2, 24), st.integers(1, 24))
def test_b_mod_depends_on_low_digits(n, M, k):
    N = radical(M) * k
    k0 = max(factorize(M).values())
    assert b_mod(n, M, N) == b_mod(n % M**k0, M, N)


@pytest.mark.parametrize("M, N", [(2, 1), (4, 2), (10, 7), (12, 18), (7, 49)])
def test_vectorised_sequences_match_scalar(M, N):
    seq = b_sequence(2000, M, N)
    table = base_shift_table(2000, M, N)
    for n in range(2000):
        assert table[n] == base_shift(n, M, N)
        assert seq[n] == table[n] % M
    assert list(b_sequence(50, M, N, start=1000)) == [b_mod(n, M, N) for n in range(1000, 1050)]


def test_number_theory_helpers():
    assert [p for p in range(50) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
    assert factorize(2**64 - 1) == {3: 1, 5: 1, 17: 1, 257: 1, 641: 1, 65537: 1, 6700417: 1}
    assert [euler_phi(m) for m in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]


@given(st.integers(1, 10**6))
def test_factorize_product(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p)
        prod *= p**e
    assert prod == n
