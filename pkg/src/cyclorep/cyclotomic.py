"""Cyclotomic polynomials: construction, detection, decomposition, records.

Phi_k is built from the identity Phi_k(x) = prod over divisors d of k of
(x^d - 1)^mobius(k/d): multiply the binomials with mobius +1, then divide out
the ones with mobius -1.  Multiplication and exact division by x^d - 1 are
linear-time passes over a dense coefficient list, which keeps even Phi_255255
comfortably fast in pure Python.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate, islice
from operator import neg, sub
from typing import NamedTuple

from .errors import DomainError, InvariantViolationError, NotPureCyclotomicError
from .numtheory import _as_positive_int, factorize, totient
from .poly import AnyPoly, SparsePoly, div_exact, gcd, to_sparse


def _mul_binomial(p: list[int], d: int) -> list[int]:
    # p(x) * (x^d - 1) on ascending dense coefficient lists
    out = [0] * d + p
    lp = len(p)
    out[:lp] = map(sub, out[:lp], p)
    return out


def _div_binomial(p: list[int], d: int) -> list[int] | None:
    # exact quotient p(x) / (x^d - 1), or None when the division is inexact;
    # quotient coefficients are negated prefix sums within each residue class
    lq = len(p) - d
    if lq <= 0:
        return None
    if d >= lq:
        q = list(map(neg, p[:lq]))
        expected = [0] * (d - lq)
        expected += q
    else:
        q = [0] * lq
        for r in range(d):
            take = len(range(r, lq, d))
            q[r::d] = map(neg, islice(accumulate(p[r::d]), take))
        expected = q[lq - d :]
    if p[lq:] != expected:
        return None
    return q


@lru_cache(maxsize=None)
def _binomial_split(k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # divisors d of k with mobius(k/d) = +1 (first) and -1 (second), ascending
    primes = [p for p, _ in factorize(k)]
    plus: list[int] = []
    minus: list[int] = []
    for bits in range(1 << len(primes)):
        e = 1
        for j, p in enumerate(primes):
            if bits >> j & 1:
                e *= p
        (plus if bin(bits).count("1") % 2 == 0 else minus).append(k // e)
    plus.sort()
    minus.sort()
    return tuple(plus), tuple(minus)


def _phi_dense(k: int) -> list[int]:
    plus, minus = _binomial_split(k)
    p = [1]
    for d in plus:
        p = _mul_binomial(p, d)
    for d in minus:
        q = _div_binomial(p, d)
        if q is None:
            raise InvariantViolationError(f"inexact division while building Phi_{k}")
        p = q
    return p


def _phi_height(k: int) -> int:
    return max(map(abs, _phi_dense(k)))


@lru_cache(maxsize=1024)
def _phi_sparse(k: int) -> SparsePoly:
    dense = _phi_dense(k)
    return SparsePoly._raw(
        tuple((e, c) for e, c in zip(range(len(dense) - 1, -1, -1), reversed(dense)) if c)
    )


def phi_poly(k: int) -> SparsePoly:
    """The k-th cyclotomic polynomial Phi_k, of degree totient(k).

    >>> phi_poly(15)
    SparsePoly('x^8-x^7+x^5-x^4+x^3-x+1')
    """
    return _phi_sparse(_as_positive_int(k, "k"))


def c_poly(n: int) -> SparsePoly:
    """C_n = x^n - 1, the product of Phi_d over all divisors d of n."""
    n = _as_positive_int(n, "n")
    return SparsePoly._raw(((n, 1), (0, -1)))


def substitution_split(f: AnyPoly) -> tuple[SparsePoly, int]:
    """Write f(x) = g(x^m) with m maximal; returns (g, m).

    Requires f nonzero with f(0) != 0.  Constants report m = 1.

    >>> g, m = substitution_split(SparsePoly([(2, 1), (0, -1)]))
    >>> (g.terms, m)
    (((1, 1), (0, -1)), 2)
    """
    fs = to_sparse(f)
    if fs.is_zero:
        raise DomainError("substitution_split requires a nonzero polynomial")
    if fs.coefficient(0) == 0:
        raise DomainError("substitution_split requires f(0) != 0")
    m = math.gcd(*(e for e, _ in fs.terms))
    if m <= 1:
        return fs, 1
    return SparsePoly._raw(tuple((e // m, c) for e, c in fs.terms)), m


@dataclass(frozen=True)
class CyclotomicDecomposition:
    """A product of cyclotomic polynomials: (k, multiplicity) pairs, ascending k."""

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 0
        for k, m in self.parts:
            if k <= prev:
                raise DomainError("indices must be distinct and ascending")
            if m < 1:
                raise DomainError(f"multiplicity of Phi_{k} must be >= 1, got {m}")
            prev = k

    @property
    def degree(self) -> int:
        return sum(m * totient(k) for k, m in self.parts)

    def expand(self) -> SparsePoly:
        out = SparsePoly.one()
        for k, m in self.parts:
            out = out * phi_poly(k) ** m
        return out


class CyclotomicVerdict(enum.Enum):
    CYCLOTOMIC = "cyclotomic"
    NOT_CYCLOTOMIC = "not-cyclotomic"
    UNKNOWN = "unknown"


class HeightRecord(NamedTuple):
    height: int
    first_k: int
    phi_of_k: int


class ExtractResult(NamedTuple):
    decomposition: CyclotomicDecomposition
    x_power: int
    cofactor: SparsePoly


def _squarefree_part(w: SparsePoly) -> SparsePoly:
    # w primitive with positive leading coefficient, degree >= 1
    g = gcd(w, w.derivative())
    if g.degree == 0:
        return w
    return div_exact(w, g)


def is_cyclotomic_quick(f: AnyPoly) -> CyclotomicVerdict:
    """Graeffe-based screen: is f (up to sign) a product of cyclotomics?

    Squaring the roots permutes roots of unity, so iterating the Graeffe step
    on the square-free part must cycle for cyclotomic inputs; coefficients of
    any monic polynomial whose roots all lie on the unit circle are bounded by
    2^deg, so a height beyond that certifies a root off the circle.  Both
    verdicts are sound; UNKNOWN means the iteration budget ran out.
    """
    fs = to_sparse(f)
    if fs.is_zero:
        raise DomainError("is_cyclotomic_quick requires a nonzero polynomial")
    if fs.coefficient(0) == 0:
        return CyclotomicVerdict.NOT_CYCLOTOMIC  # 0 is a root, and is no root of unity
    if abs(fs.leading_coefficient) != 1 or abs(fs.coefficient(0)) != 1:
        return CyclotomicVerdict.NOT_CYCLOTOMIC
    deg = fs.degree
    if deg == 0:
        return CyclotomicVerdict.CYCLOTOMIC  # +-1: the empty product
    bound = 1 << deg
    h = fs if fs.leading_coefficient > 0 else -fs
    h = _squarefree_part(h)
    seen = {h.terms, _canon_sign(h.negate_x()).terms}
    for _ in range((deg - 1).bit_length() + 2):
        g = _canon_sign(h.graeffe())
        if max(abs(c) for _, c in g.terms) > bound:
            return CyclotomicVerdict.NOT_CYCLOTOMIC
        g = _squarefree_part(g)
        if max(abs(c) for _, c in g.terms) > bound:
            return CyclotomicVerdict.NOT_CYCLOTOMIC
        if g.terms in seen:
            return CyclotomicVerdict.CYCLOTOMIC
        seen.add(g.terms)
        seen.add(_canon_sign(g.negate_x()).terms)
        h = g
    return CyclotomicVerdict.UNKNOWN


def _canon_sign(f: SparsePoly) -> SparsePoly:
    return f if f.leading_coefficient >= 0 else -f


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=None)
def _candidates(max_degree: int) -> tuple[tuple[int, int], ...]:
    # all (k, totient(k)) with totient(k) <= max_degree, ascending k
    if max_degree < 1:
        return ()
    primes = _primes_upto(max_degree + 1)
    found: list[tuple[int, int]] = []

    def extend(start: int, k: int, phi: int) -> None:
        found.append((k, phi))
        for j in range(start, len(primes)):
            p = primes[j]
            base = phi * (p - 1)
            if base > max_degree:
                break
            kk, ff = k * p, base
            while ff <= max_degree:
                extend(j + 1, kk, ff)
                kk *= p
                ff *= p

    extend(0, 1, 1)
    found.sort()
    return tuple(found)


def _divide_out_phi(p: list[int], k: int) -> list[int] | None:
    # exact quotient p / Phi_k via the binomial chain, or None if Phi_k does
    # not divide p; multiplies by the mobius -1 binomials first, then divides
    # by the +1 ones largest-first so non-divisors fail fast
    plus, minus = _binomial_split(k)
    for d in minus:
        p = _mul_binomial(p, d)
    for d in reversed(plus):
        q = _div_binomial(p, d)
        if q is None:
            return None
        p = q
    return p


def _decompose_dense(p: list[int]) -> tuple[list[tuple[int, int]], list[int]]:
    # peel cyclotomic factors off a dense primitive polynomial; returns
    # ((k, multiplicity) ascending, residual coefficients)
    parts: list[tuple[int, int]] = []
    for k, phi in _candidates(len(p) - 1):
        if phi > len(p) - 1:
            continue
        mult = 0
        while True:
            q = _divide_out_phi(p, k)
            if q is None:
                break
            p = q
            mult += 1
        if mult:
            parts.append((k, mult))
        if len(p) == 1:
            break
    return parts, p


def cyclotomic_decompose(f: AnyPoly) -> CyclotomicDecomposition:
    """Decompose f as +- a product of cyclotomic polynomials.

    Requires f nonzero, f(0) != 0, and content +-1.  Raises
    NotPureCyclotomicError (carrying the residual) when a non-cyclotomic
    cofactor remains.

    >>> cyclotomic_decompose(c_poly(6)).parts
    ((1, 1), (2, 1), (3, 1), (6, 1))
    """
    fs = to_sparse(f)
    if fs.is_zero:
        raise DomainError("cannot decompose the zero polynomial")
    if fs.coefficient(0) == 0:
        raise DomainError("f is divisible by x; strip the x power first")
    if fs.content() != 1:
        raise DomainError("content must be +-1")
    dense = [0] * (fs.degree + 1)
    for e, c in fs.terms:
        dense[e] = c
    parts, residual = _decompose_dense(dense)
    if residual != [1] and residual != [-1]:
        raise NotPureCyclotomicError(
            "a non-cyclotomic residual remains",
            residual=SparsePoly((e, c) for e, c in enumerate(residual) if c),
        )
    return CyclotomicDecomposition(tuple(parts))


def extract_cyclotomic_factors(f: AnyPoly) -> ExtractResult:
    """Split f into cyclotomic part, power of x, and everything else.

    Returns (decomposition, x_power, cofactor) with
    f = x^x_power * decomposition.expand() * cofactor exactly; the integer
    content and the sign of f are carried on the cofactor.
    """
    fs = to_sparse(f)
    if fs.is_zero:
        raise DomainError("cannot extract factors of the zero polynomial")
    v = fs.min_exponent()
    if v:
        fs = SparsePoly._raw(tuple((e - v, c) for e, c in fs.terms))
    signed_content = fs.content() if fs.leading_coefficient > 0 else -fs.content()
    prim = fs.primitive_part()
    dense = [0] * (prim.degree + 1)
    for e, c in prim.terms:
        dense[e] = c
    parts, residual = _decompose_dense(dense)
    cofactor = SparsePoly((e, c * signed_content) for e, c in enumerate(residual) if c)
    return ExtractResult(CyclotomicDecomposition(tuple(parts)), v, cofactor)


def height_records(k_max: int) -> list[HeightRecord]:
    """Indices where the height of Phi_k first exceeds every earlier height.

    Scans k = 1 .. k_max in order and records (height, k, totient(k)) whenever
    the height strictly exceeds all previous ones.  The trivial first record
    (1, 1, 1) is included.
    """
    k_max = _as_positive_int(k_max, "k_max")
    records: list[HeightRecord] = []
    best = 0
    for k in range(1, k_max + 1):
        h = _phi_height(k)
        if h > best:
            best = h
            records.append(HeightRecord(h, k, totient(k)))
    return records
