"""Exact univariate integer polynomials in sparse and dense form.

SparsePoly stores (exponent, coefficient) terms with exponents strictly
descending and no zero coefficients; the zero polynomial has no terms.
DensePoly stores coefficients ascending from the constant term; the zero
polynomial is [0] with degree 0.  All arithmetic is exact over the integers;
divisions that must be exact raise InexactDivisionError when they are not.
"""

from __future__ import annotations

import math
import operator
from typing import Iterable, NamedTuple, Union

from .errors import DomainError, InexactDivisionError, PolyParseError

AnyPoly = Union["SparsePoly", "DensePoly"]


class SparsePoly:
    """Immutable sparse polynomial: terms (exponent, coefficient), descending."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        for e, c in terms:
            e = operator.index(e)
            if e < 0:
                raise DomainError(f"negative exponent {e}")
            c = operator.index(c)
            if c:
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
        self._terms = tuple(sorted(acc.items(), reverse=True))

    @classmethod
    def _raw(cls, terms: tuple[tuple[int, int], ...]) -> "SparsePoly":
        # trusted fast path: terms already canonical
        self = object.__new__(cls)
        self._terms = terms
        return self

    @classmethod
    def zero(cls) -> "SparsePoly":
        return _SPARSE_ZERO

    @classmethod
    def one(cls) -> "SparsePoly":
        return _SPARSE_ONE

    @classmethod
    def x(cls) -> "SparsePoly":
        return _SPARSE_X

    @classmethod
    def constant(cls, c: int) -> "SparsePoly":
        return cls(((0, c),))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "SparsePoly":
        return cls(((e, c),))

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports degree 0."""
        return self._terms[0][0] if self._terms else 0

    @property
    def leading_coefficient(self) -> int:
        return self._terms[0][1] if self._terms else 0

    @property
    def term_count(self) -> int:
        return len(self._terms)

    def coefficient(self, e: int) -> int:
        for ee, c in self._terms:
            if ee == e:
                return c
            if ee < e:
                return 0
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"SparsePoly({format_poly(self)!r})"

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw(tuple((e, -c) for e, c in self._terms))

    def __add__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms:
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]
        return SparsePoly._raw(tuple(sorted(acc.items(), reverse=True)))

    __radd__ = __add__

    def __sub__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            if other == 0:
                return _SPARSE_ZERO
            return SparsePoly._raw(tuple((e, c * other) for e, c in self._terms))
        if not isinstance(other, SparsePoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return _SPARSE_ZERO
        acc: dict[int, int] = {}
        get = acc.get
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                acc[e] = get(e, 0) + c1 * c2
        return SparsePoly(acc.items())

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePoly":
        n = operator.index(n)
        if n < 0:
            raise DomainError(f"negative power {n}")
        result = _SPARSE_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, e: int) -> "SparsePoly":
        """Multiply by x^e (e >= 0)."""
        if e < 0:
            raise DomainError(f"negative shift {e}")
        if e == 0 or not self._terms:
            return self
        return SparsePoly._raw(tuple((ee + e, c) for ee, c in self._terms))

    def even_part(self) -> "SparsePoly":
        """f_e with f(x) = f_e(x^2) + x*f_o(x^2)."""
        return SparsePoly._raw(tuple((e // 2, c) for e, c in self._terms if e % 2 == 0))

    def odd_part(self) -> "SparsePoly":
        """f_o with f(x) = f_e(x^2) + x*f_o(x^2)."""
        return SparsePoly._raw(tuple((e // 2, c) for e, c in self._terms if e % 2 == 1))

    def reverse(self) -> "SparsePoly":
        """x^deg(f) * f(1/x).  An involution when f(0) != 0."""
        d = self.degree
        return SparsePoly._raw(tuple((d - e, c) for e, c in reversed(self._terms)))

    def negate_x(self) -> "SparsePoly":
        """f(-x): negate coefficients of odd-degree terms."""
        return SparsePoly._raw(tuple((e, c if e % 2 == 0 else -c) for e, c in self._terms))

    def graeffe(self) -> "SparsePoly":
        """Graeffe root-squaring step: f_e^2 - x*f_o^2.

        Satisfies graeffe(f)(x^2) == f(x) * f(-x) exactly; the sign is not
        normalized, so odd-degree monic inputs come out with leading
        coefficient -1.
        """
        fe, fo = self.even_part(), self.odd_part()
        return fe * fe - (fo * fo).shift(1)

    def derivative(self) -> "SparsePoly":
        return SparsePoly._raw(tuple((e - 1, c * e) for e, c in self._terms if e >= 1))

    def content(self) -> int:
        """Nonnegative gcd of all coefficients; 0 for the zero polynomial."""
        return math.gcd(*(c for _, c in self._terms)) if self._terms else 0

    def primitive_part(self) -> "SparsePoly":
        """self divided by its content, normalized to positive leading coefficient."""
        if not self._terms:
            raise DomainError("the zero polynomial has no primitive part")
        d = self.content()
        if self._terms[0][1] < 0:
            d = -d
        return SparsePoly._raw(tuple((e, c // d) for e, c in self._terms))

    def eval_at(self, x0: int) -> int:
        """Exact integer value f(x0)."""
        return sum(c * x0**e for e, c in self._terms)

    def min_exponent(self) -> int:
        """Smallest exponent with a nonzero coefficient; 0 for the zero polynomial."""
        return self._terms[-1][0] if self._terms else 0


class DensePoly:
    """Immutable dense polynomial: coefficients ascending from the constant term."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[int] = (0,)):
        coeffs = [operator.index(c) for c in coefficients]
        if not coeffs:
            coeffs = [0]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @classmethod
    def zero(cls) -> "DensePoly":
        return _DENSE_ZERO

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def is_zero(self) -> bool:
        return self._coeffs == (0,)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports degree 0."""
        return len(self._coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        return self._coeffs[-1]

    @property
    def term_count(self) -> int:
        return sum(1 for c in self._coeffs if c)

    def coefficient(self, e: int) -> int:
        return self._coeffs[e] if 0 <= e < len(self._coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, DensePoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"DensePoly({format_poly(self)!r})"

    def __neg__(self) -> "DensePoly":
        return DensePoly(-c for c in self._coeffs)

    def __add__(self, other) -> "DensePoly":
        if isinstance(other, int):
            other = DensePoly((other,))
        if not isinstance(other, DensePoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DensePoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "DensePoly":
        if isinstance(other, int):
            other = DensePoly((other,))
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DensePoly":
        return (-self) + other

    def __mul__(self, other) -> "DensePoly":
        if isinstance(other, int):
            return DensePoly(c * other for c in self._coeffs)
        if not isinstance(other, DensePoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _DENSE_ZERO
        a, b = self._coeffs, other._coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return DensePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "DensePoly":
        n = operator.index(n)
        if n < 0:
            raise DomainError(f"negative power {n}")
        result = DensePoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def even_part(self) -> "DensePoly":
        return DensePoly(self._coeffs[0::2])

    def odd_part(self) -> "DensePoly":
        c = self._coeffs[1::2]
        return DensePoly(c) if c else _DENSE_ZERO

    def reverse(self) -> "DensePoly":
        return DensePoly(reversed(self._coeffs))

    def negate_x(self) -> "DensePoly":
        return DensePoly(c if i % 2 == 0 else -c for i, c in enumerate(self._coeffs))

    def graeffe(self) -> "DensePoly":
        """Graeffe root-squaring step: f_e^2 - x*f_o^2 (sign not normalized)."""
        fe, fo = self.even_part(), self.odd_part()
        sq = fo * fo
        shifted = DensePoly((0,) + sq._coeffs) if not sq.is_zero else _DENSE_ZERO
        return fe * fe - shifted

    def derivative(self) -> "DensePoly":
        if len(self._coeffs) == 1:
            return _DENSE_ZERO
        return DensePoly(i * c for i, c in enumerate(self._coeffs) if i >= 1)

    def content(self) -> int:
        return math.gcd(*self._coeffs)

    def primitive_part(self) -> "DensePoly":
        if self.is_zero:
            raise DomainError("the zero polynomial has no primitive part")
        d = self.content()
        if self._coeffs[-1] < 0:
            d = -d
        return DensePoly(c // d for c in self._coeffs)

    def eval_at(self, x0: int) -> int:
        out = 0
        for c in reversed(self._coeffs):
            out = out * x0 + c
        return out

    def min_exponent(self) -> int:
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return 0


_SPARSE_ZERO = SparsePoly._raw(())
_SPARSE_ONE = SparsePoly._raw(((0, 1),))
_SPARSE_X = SparsePoly._raw(((1, 1),))
_DENSE_ZERO = DensePoly((0,))


def to_dense(f: AnyPoly) -> DensePoly:
    """Convert either representation to dense."""
    if isinstance(f, DensePoly):
        return f
    if f.is_zero:
        return _DENSE_ZERO
    out = [0] * (f.degree + 1)
    for e, c in f.terms:
        out[e] = c
    return DensePoly(out)


def to_sparse(f: AnyPoly) -> SparsePoly:
    """Convert either representation to sparse."""
    if isinstance(f, SparsePoly):
        return f
    return SparsePoly._raw(
        tuple((e, c) for e, c in zip(range(len(f.coefficients) - 1, -1, -1), reversed(f.coefficients)) if c)
    )


def add(f: AnyPoly, g: AnyPoly) -> AnyPoly:
    return f + g


def sub(f: AnyPoly, g: AnyPoly) -> AnyPoly:
    return f - g


def mul(f: AnyPoly, g: AnyPoly) -> AnyPoly:
    return f * g


def div_exact(f: AnyPoly, g: AnyPoly) -> SparsePoly:
    """Exact quotient f / g over the integers.

    Raises InexactDivisionError (carrying the offending remainder) when g does
    not divide f, and DomainError when g is zero.

    >>> div_exact(parse_poly("x^2-1"), parse_poly("x-1"))
    SparsePoly('x+1')
    """
    fs, gs = to_sparse(f), to_sparse(g)
    if gs.is_zero:
        raise DomainError("division by the zero polynomial")
    if fs.is_zero:
        return _SPARSE_ZERO
    dg = gs.degree
    if fs.degree < dg:
        raise InexactDivisionError("quotient would not be a polynomial", remainder=fs)
    rem = [0] * (fs.degree + 1)
    for e, c in fs.terms:
        rem[e] = c
    glc = gs.leading_coefficient
    gtail = gs.terms[1:]
    q = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if not c:
            continue
        qc, r = divmod(c, glc)
        if r:
            raise InexactDivisionError(
                "leading coefficient does not divide",
                remainder=SparsePoly((e, cc) for e, cc in enumerate(rem[: i + 1]) if cc),
            )
        q[i - dg] = qc
        rem[i] = 0
        base = i - dg
        for e, gc in gtail:
            rem[base + e] -= qc * gc
    if any(rem[:dg]):
        raise InexactDivisionError(
            "nonzero remainder",
            remainder=SparsePoly((e, c) for e, c in enumerate(rem[:dg]) if c),
        )
    return SparsePoly((e, c) for e, c in enumerate(q) if c)


def _pseudo_rem(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    # lc(b)^j * a  mod  b for some j >= 0: each elimination scales the rest of
    # the dividend by lc(b) so the division stays integral.  The stray power of
    # lc(b) is harmless because callers take the primitive part.
    rem = list(to_dense(a).coefficients)
    blc = b.leading_coefficient
    btail = b.terms[1:]
    db = b.degree
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if not c:
            continue
        rem[i] = 0
        if blc != 1:
            for j in range(i):
                rem[j] *= blc
        base = i - db
        for e, gc in btail:
            rem[base + e] -= c * gc
    return SparsePoly((e, c) for e, c in enumerate(rem[:db]) if c)


def gcd(f: AnyPoly, g: AnyPoly) -> SparsePoly:
    """Polynomial gcd over the integers, primitive with positive leading coefficient.

    The integer content of the inputs is deliberately not carried into the
    result: gcd returns the primitive gcd of the primitive parts.

    >>> gcd(parse_poly("x^2-1"), parse_poly("x^3-1"))
    SparsePoly('x-1')
    """
    a, b = to_sparse(f), to_sparse(g)
    if a.is_zero and b.is_zero:
        raise DomainError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.primitive_part()
    if b.is_zero:
        return a.primitive_part()
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b)
        if r.is_zero:
            return b
        a, b = b, r.primitive_part()


class Norms(NamedTuple):
    height: int
    one_norm: int
    two_norm_squared: int
    term_count: int


def norms(f: AnyPoly) -> Norms:
    """(height, one-norm, squared two-norm, term count) in one pass.

    >>> norms(parse_poly("x^2-1"))
    Norms(height=1, one_norm=2, two_norm_squared=2, term_count=2)
    """
    cs = [c for _, c in to_sparse(f).terms]
    return Norms(
        height=max((abs(c) for c in cs), default=0),
        one_norm=sum(abs(c) for c in cs),
        two_norm_squared=sum(c * c for c in cs),
        term_count=len(cs),
    )


def height(f: AnyPoly) -> int:
    """Largest absolute coefficient."""
    return norms(f).height


def one_norm(f: AnyPoly) -> int:
    """Sum of absolute coefficients."""
    return norms(f).one_norm


def two_norm_squared(f: AnyPoly) -> int:
    """Sum of squared coefficients."""
    return norms(f).two_norm_squared


def term_count(f: AnyPoly) -> int:
    """Number of nonzero coefficients."""
    return norms(f).term_count


_DIGITS = frozenset("0123456789")
_WS = frozenset(" \t\r\n")


def parse_poly(text: str) -> SparsePoly:
    """Parse polynomial text into a SparsePoly.

    Grammar: an optional leading '-', then terms joined by '+' or '-'.  A term
    is an unsigned integer, optionally '*' and a variable part, or a bare
    variable part 'x' with an optional '^' and unsigned exponent.  Whitespace
    between tokens is ignored.  Like terms are combined.

    >>> parse_poly("x^10-1").terms
    ((10, 1), (0, -1))
    >>> parse_poly("2*x + 3*x").terms
    ((1, 5),)
    """
    n = len(text)
    i = 0

    def skip_ws() -> None:
        nonlocal i
        while i < n and text[i] in _WS:
            i += 1

    def read_uint() -> int:
        nonlocal i
        start = i
        while i < n and text[i] in _DIGITS:
            i += 1
        if i == start:
            raise PolyParseError("expected a number", start)
        return int(text[start:i])

    def read_var_exponent() -> int:
        # positioned just past 'x'
        nonlocal i
        skip_ws()
        if i < n and text[i] == "^":
            i += 1
            skip_ws()
            return read_uint()
        return 1

    def read_term() -> tuple[int, int]:
        nonlocal i
        skip_ws()
        if i < n and text[i] in _DIGITS:
            coeff = read_uint()
            skip_ws()
            if i < n and text[i] == "*":
                i += 1
                skip_ws()
                if i >= n or text[i] != "x":
                    raise PolyParseError("expected 'x' after '*'", i)
                i += 1
                return read_var_exponent(), coeff
            return 0, coeff
        if i < n and text[i] == "x":
            i += 1
            return read_var_exponent(), 1
        raise PolyParseError("expected a term", i)

    terms: list[tuple[int, int]] = []
    skip_ws()
    if i >= n:
        raise PolyParseError("empty polynomial text", i)
    sign = 1
    if text[i] == "-":
        sign = -1
        i += 1
    e, c = read_term()
    terms.append((e, sign * c))
    while True:
        skip_ws()
        if i >= n:
            break
        ch = text[i]
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
        i += 1
        e, c = read_term()
        terms.append((e, sign * c))
    return SparsePoly(terms)


def format_poly(f: AnyPoly) -> str:
    """Canonical text form: terms descending, coefficients 1/-1 elided before x,
    '*' between coefficient and variable, no spaces.

    >>> format_poly(SparsePoly([(2, 1), (0, -1)]))
    'x^2-1'
    >>> format_poly(SparsePoly([(7, -2)]))
    '-2*x^7'
    >>> format_poly(SparsePoly())
    '0'
    """
    fs = to_sparse(f)
    if fs.is_zero:
        return "0"
    parts: list[str] = []
    for idx, (e, c) in enumerate(fs.terms):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "x" if e == 1 else f"x^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if idx == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts)
