import json
from math import gcd

import pytest
from hypothesis import given, strategies as st

from shiftdigits.digitmap import InvalidInputError, euler_phi
from shiftdigits.pte import build_partition, certify, enumerate_solutions, power_sum_table


def test_thue_morse_split():
    sol = build_partition(2, 1, 2)
    assert sol.blocks == [[0, 3, 5, 6], [1, 2, 4, 7]]
    cert = certify(sol, 2)
    assert cert.certified
    assert cert.power_sums == [[4, 4], [14, 14], [70, 70]]


def test_examples():
    assert build_partition(3, 2, 1).blocks == [[0, 4, 8], [1, 5, 6], [2, 3, 7]]
    assert build_partition(2, 1, 0).blocks == [[0], [1]]
    cert = certify(build_partition(3, 2, 1), 1)
    assert cert.certified and cert.power_sums[1] == [12, 12, 12]
    bad = certify(build_partition(4, 2, 1), 1)
    assert not bad.certified and bad.failing_degree == 1


def test_errors():
    with pytest.raises(InvalidInputError):
        build_partition(4, 4, 1)
    with pytest.raises(InvalidInputError):
        build_partition(4, 0, 1)
    with pytest.raises(InvalidInputError):
        certify(build_partition(3, 1, 1), 2)


@pytest.mark.parametrize("M, p, count", [(2, 1, 1), (6, 1, 2), (5, 1, 4), (8, 2, 4)])
def test_enumeration(M, p, count):
    sols = enumerate_solutions(M, p)
    assert len(sols) == count == euler_phi(M)
    assert [s.N for s in sols] == [N for N in range(1, M) if gcd(M, N) == 1]


@given(st.integers(2, 7), st.integers(1, 6), st.integers(0, 2))
def test_certification_iff_coprime(M, N, p):
    N = 1 + (N - 1) % (M - 1)
    sol = certify(build_partition(M, N, p))
    # every block always has M**p elements, so degree 0 never fails
    assert sol.power_sums[0] == [M**p] * M
    if p >= 1:
        assert sol.certified == (gcd(M, N) == 1)


@given(st.integers(2, 7), st.integers(1, 6), st.integers(0, 2))
def test_blocks_partition_the_range(M, N, p):
    N = 1 + (N - 1) % (M - 1)
    sol = build_partition(M, N, p)
    flat = sorted(m for blk in sol.blocks for m in blk)
    assert flat == list(range(M ** (p + 1)))


def test_power_sum_table_direct():
    blocks = [[0, 3, 5, 6], [1, 2, 4, 7]]
    assert power_sum_table(blocks, 3) == [[4, 4], [14, 14], [70, 70], [368, 416]]


def test_json_and_csv():
    sol = certify(build_partition(2, 1, 2))
    data = json.loads(json.dumps(sol.to_json()))
    assert data["blocks"] == {"0": [0, 3, 5, 6], "1": [1, 2, 4, 7]}
    assert data["power_sums"][2] == ["70", "70"] and data["certified"] is True
    assert sol.power_sums_csv().splitlines() == ["k,T0,T1", "0,4,4", "1,14,14", "2,70,70"]
