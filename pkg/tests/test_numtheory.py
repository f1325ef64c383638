import doctest

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclorep import numtheory
from cyclorep.errors import DomainError, InconsistencyError
from cyclorep.numtheory import (
    divisor_count,
    divisors,
    factorize,
    is_prime,
    mobius,
    recover_pq,
    totient,
)

from oracles import (
    brute_divisors,
    brute_factorize,
    brute_is_prime,
    brute_mobius,
    brute_totient,
)


def test_doctests():
    failures, _ = doctest.testmod(numtheory)
    assert failures == 0


def test_factorize_small_range():
    for n in range(1, 2001):
        assert factorize(n) == brute_factorize(n), n


@given(st.integers(min_value=1, max_value=10**9))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    prod = 1
    prev = 1
    for p, e in fac:
        assert p > prev  # ascending, distinct
        assert e >= 1
        assert brute_is_prime(p) or p > 10**5  # full check only when cheap
        prod *= p**e
        prev = p
    assert prod == n


def test_divisors_and_count():
    for n in range(1, 501):
        ds = divisors(n)
        assert ds == brute_divisors(n), n
        assert divisor_count(n) == len(ds)


def test_mobius_and_totient():
    for n in range(1, 1001):
        assert mobius(n) == brute_mobius(n), n
        assert totient(n) == brute_totient(n), n


def test_divisor_sum_identities():
    # sum of totient(d) over d | n is n; sum of mobius(d) is [n == 1]
    for n in range(1, 2001):
        ds = divisors(n)
        assert sum(totient(d) for d in ds) == n
        assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)


def test_is_prime():
    for n in range(2, 5001):
        assert is_prime(n) == brute_is_prime(n), n


@pytest.mark.parametrize("bad", [0, -3])
def test_positive_argument_required(bad):
    for fn in (factorize, divisors, mobius, totient, divisor_count):
        with pytest.raises(DomainError):
            fn(bad)


def test_non_integer_rejected():
    with pytest.raises(DomainError):
        factorize(2.5)  # type: ignore[arg-type]


def test_recover_pq_examples():
    assert recover_pq(15, 8) == (3, 5)
    assert recover_pq(29 * 47, 28 * 46) == (29, 47)


def test_recover_pq_all_small_pairs():
    primes = [p for p in range(2, 100) if brute_is_prime(p)]
    for i, q in enumerate(primes):
        for p in primes[:i]:
            assert recover_pq(p * q, (p - 1) * (q - 1)) == (p, q)


def test_recover_pq_rejects():
    with pytest.raises(InconsistencyError):
        recover_pq(15, 9)  # negative discriminant branch or mismatch
    with pytest.raises(InconsistencyError):
        recover_pq(16, 8)  # discriminant 17 is not a square
    with pytest.raises(InconsistencyError):
        recover_pq(36, 24)  # (9, 4): not a prime pair
