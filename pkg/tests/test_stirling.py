import threading
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipb.errors import InputTooLargeError
from ipb.series import em_series, exp_series
from ipb.stirling import (
    partition_count_oracle,
    stirling2,
    stirling2_associated,
    stirling2_restricted,
    stirling_row,
    stirling_triangle,
)
from ipb.variant import Variant


def explicit_stirling(n, k):
    # (1/k!) sum_j (-1)^j C(k,j) (k-j)^n
    total = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    assert total % factorial(k) == 0
    return total // factorial(k)


def egf_count(n, k, inner):
    # n! [t^n] inner^k / k!
    return (inner**k)[n] * factorial(n) / factorial(k)


def test_stirling2_examples():
    assert stirling2(4, 2) == 7
    assert [stirling2(n, n) for n in range(11)] == [1] * 11
    assert explicit_stirling(6, 3) == 90
    assert stirling2(6, 3) == 90


@pytest.mark.parametrize("n", range(0, 26))
def test_stirling2_matches_explicit_sum(n):
    assert [stirling2(n, k) for k in range(n + 1)] == [explicit_stirling(n, k) for k in range(n + 1)]


def test_out_of_support_is_zero():
    assert stirling2(3, 5) == 0
    assert stirling2(5, 0) == 0
    assert stirling2(-1, 0) == 0
    assert stirling2_restricted(5, 2, 2) == 0
    assert stirling2_associated(3, 2, 2) == 0
    for m in (1, 2, 5):
        assert stirling2_restricted(0, 0, m) == 1
        assert stirling2_associated(0, 0, m) == 1


@pytest.mark.parametrize(
    "n, k, m, expected",
    [(4, 2, 2, 3), (5, 2, 2, 0), (5, 3, 2, 15)],
)
def test_restricted_examples(n, k, m, expected):
    assert stirling2_restricted(n, k, m) == expected
    assert partition_count_oracle(n, k, 1, m) == expected


@pytest.mark.parametrize(
    "n, k, m, expected",
    [(4, 2, 2, 3), (3, 2, 2, 0), (5, 2, 2, 10)],
)
def test_associated_examples(n, k, m, expected):
    assert stirling2_associated(n, k, m) == expected
    assert partition_count_oracle(n, k, m) == expected


def test_oracle_examples():
    assert partition_count_oracle(4, 2, 1, 2) == 3
    assert partition_count_oracle(4, 2, 2, None) == 3
    assert partition_count_oracle(4, 2, 1, None) == 7
    assert partition_count_oracle(0, 0) == 1
    assert partition_count_oracle(3, 0) == 0


def test_oracle_cap(monkeypatch):
    with pytest.raises(InputTooLargeError):
        partition_count_oracle(17, 3)
    with pytest.raises(InputTooLargeError):
        partition_count_oracle(9, 3, cap=8)
    monkeypatch.setenv("IPB_ENUM_CAP", "5")
    with pytest.raises(InputTooLargeError):
        partition_count_oracle(6, 2)
    assert partition_count_oracle(5, 2) == 15


def test_oracle_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        partition_count_oracle(4, 2, 3, 2)


def test_rows():
    assert stirling_row(3, Variant.classical()) == [0, 1, 3, 1]
    assert stirling_row(0, Variant.restricted(2)) == [1]
    assert stirling_row(4, Variant.associated(2)) == [0, 1, 3, 0, 0]


@pytest.mark.parametrize("variant", [Variant.classical(), Variant.restricted(3), Variant.associated(2)])
def test_row_agrees_with_scalars(variant):
    table = stirling_triangle(15, variant)
    for n in range(16):
        row = stirling_row(n, variant)
        assert len(row) == n + 1
        for k in range(n + 1):
            assert table[n, k] == row[k]
            if variant.kind == "restricted":
                assert row[k] == stirling2_restricted(n, k, variant.m)
            elif variant.kind == "associated":
                assert row[k] == stirling2_associated(n, k, variant.m)
            else:
                assert row[k] == stirling2(n, k)


@pytest.mark.parametrize("m", range(1, 6))
def test_triangle_invariants(m):
    for variant in (Variant.restricted(m), Variant.associated(m)):
        t = stirling_triangle(20, variant)
        assert t.rows[0] == (1,)
        for n in range(1, 21):
            assert t[n, 0] == 0
            for k in range(n + 1):
                v = t[n, k]
                assert v >= 0
                if variant.kind == "restricted" and n > m * k:
                    assert v == 0
                if variant.kind == "associated" and n < m * k:
                    assert v == 0


@pytest.mark.parametrize("m", range(1, 6))
def test_egf_of_restricted_and_associated(m):
    N = 20
    restricted_inner = em_series(m, 1, N) - 1
    associated_inner = exp_series(N) - em_series(m - 1, 1, N)
    for k in range(0, 9):
        for n in range(N + 1):
            assert egf_count(n, k, restricted_inner) == stirling2_restricted(n, k, m)
            assert egf_count(n, k, associated_inner) == stirling2_associated(n, k, m)


def test_recurrence_forms_agree():
    for m in range(1, 7):
        for n in range(31):
            for k in range(n + 1):
                assert stirling2_restricted(n, k, m, "sum") == stirling2_restricted(n, k, m, "linear")
                assert stirling2_associated(n, k, m, "sum") == stirling2_associated(n, k, m, "linear")


def test_reductions():
    for n in range(31):
        for k in range(n + 1):
            assert stirling2_associated(n, k, 1) == stirling2(n, k)
            for m in (n, n + 1, n + 7):
                if m >= 1:
                    assert stirling2_restricted(n, k, m) == stirling2(n, k)


def test_bell_row_sums():
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]
    for n in range(13):
        assert sum(stirling_row(n, Variant.classical())) == bell[n]
        assert sum(partition_count_oracle(n, k) for k in range(n + 1)) == bell[n]


def test_classical_identities():
    for n in range(2, 26):
        assert stirling2(n, 1) == 1
        assert stirling2(n, n - 1) == comb(n, 2)
        assert stirling2(n, 2) == 2 ** (n - 1) - 1
        assert stirling2(n, 3) == Fraction(3 ** (n - 1), 2) - 2 ** (n - 1) + Fraction(1, 2)
        assert stirling2(n, 4) == Fraction(4 ** (n - 1), 6) - Fraction(3 ** (n - 1), 2) + Fraction(2 ** n, 4) - Fraction(1, 6)
        if n >= 3:
            assert stirling2(n, n - 2) == Fraction(3 * n - 5, 4) * comb(n, 3)
        if n >= 4:
            assert stirling2(n, n - 3) == comb(n, 4) * comb(n - 2, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_prime_rows(p):
    for m in range(1, p):
        # S(p,p)_{<=m} = 1 for every m, so only k < p is divisible
        assert all(stirling2_restricted(p, k, m) % p == 0 for k in range(1, p))
        assert stirling2_restricted(p, p, m) == 1
    for m in range(2, p + 3):
        assert all(stirling2_associated(p, k, m) % p == 0 for k in range(2, p + 1))
        assert stirling2_associated(p, 1, m) == (1 if m <= p else 0)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 10), k=st.integers(0, 10), m=st.integers(1, 11))
def test_oracle_equivalence_random(n, k, m):
    assert stirling2_restricted(n, k, m) == partition_count_oracle(n, k, 1, m)
    assert stirling2_associated(n, k, m) == partition_count_oracle(n, k, m)


def test_concurrent_calls_match_serial():
    queries = [(n, k, m) for n in range(0, 70, 3) for k in range(0, n + 1, 4) for m in (1, 2, 3, 50)]
    serial = [(stirling2_restricted(*q), stirling2_associated(*q)) for q in queries]
    results = {}

    def worker(i):
        results[i] = [(stirling2_restricted(*q), stirling2_associated(*q)) for q in reversed(queries)][::-1]

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == serial for r in results.values())
