"""Elementary number theory over the positive integers.

Everything here is exact integer arithmetic.  Factorization uses trial
division with a 2/3 wheel, which is entirely adequate for the desk-scale
inputs this package targets (n in the millions at worst).
"""

from __future__ import annotations

import math
import operator

from .errors import DomainError, InconsistencyError

# (prime, exponent) pairs with primes strictly ascending; 1 factors as [].
PrimeFactorization = list[tuple[int, int]]


def _as_positive_int(n, name: str = "n") -> int:
    try:
        n = operator.index(n)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {type(n).__name__}") from None
    if n < 1:
        raise DomainError(f"{name} must be >= 1, got {n}")
    return n


def factorize(n: int) -> PrimeFactorization:
    """Prime factorization of n >= 1, primes ascending.

    >>> factorize(1)
    []
    >>> factorize(105)
    [(3, 1), (5, 1), (7, 1)]
    >>> factorize(40755)
    [(3, 1), (5, 1), (11, 1), (13, 1), (19, 1)]
    """
    n = _as_positive_int(n)
    out: PrimeFactorization = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    """True when n is prime.  Accepts any integer; values below 2 are not prime."""
    try:
        n = operator.index(n)
    except TypeError:
        raise DomainError(f"n must be an integer, got {type(n).__name__}") from None
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += step
        step = 6 - step
    return True


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending.

    >>> divisors(12)
    [1, 2, 3, 4, 6, 12]
    >>> len(divisors(105))
    8
    """
    ds = [1]
    for p, e in factorize(n):
        ds = [d * q for d in ds for q in [p**i for i in range(e + 1)]]
    ds.sort()
    return ds


def mobius(n: int) -> int:
    """Mobius function: 0 on non-square-free n, else (-1)^(number of primes).

    >>> mobius(1), mobius(4), mobius(30)
    (1, 0, -1)
    """
    sign = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        sign = -sign
    return sign


def totient(n: int) -> int:
    """Euler's totient.

    >>> totient(1), totient(105), totient(6545)
    (1, 48, 3840)
    """
    n = _as_positive_int(n)
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def divisor_count(n: int) -> int:
    """Number of positive divisors of n.

    >>> divisor_count(12), divisor_count(105)
    (6, 8)
    """
    out = 1
    for _, e in factorize(n):
        out *= e + 1
    return out


def recover_pq(k: int, phi: int) -> tuple[int, int]:
    """Recover distinct primes p < q from k = p*q and phi = (p-1)*(q-1).

    Solves the quadratic x^2 - s*x + k with s = k + 1 - phi; the discriminant
    s^2 - 4k must be a perfect square, and math.isqrt supplies its exact
    integer square root.  Raises InconsistencyError when no pair of distinct
    primes fits.

    >>> recover_pq(15, 8)
    (3, 5)
    >>> recover_pq(29 * 47, 28 * 46)
    (29, 47)
    """
    k = _as_positive_int(k, "k")
    phi = _as_positive_int(phi, "phi")
    s = k + 1 - phi
    disc = s * s - 4 * k
    if disc < 0:
        raise InconsistencyError(f"no integer solutions: discriminant {disc} is negative")
    r = math.isqrt(disc)
    if r * r != disc:
        raise InconsistencyError(f"discriminant {disc} is not a perfect square")
    p, q = (s - r) // 2, (s + r) // 2
    if p >= q or p * q != k or (p - 1) * (q - 1) != phi:
        raise InconsistencyError(f"values k={k}, phi={phi} do not come from distinct primes")
    if not (is_prime(p) and is_prime(q)):
        raise InconsistencyError(f"recovered pair ({p}, {q}) is not a pair of primes")
    return p, q
