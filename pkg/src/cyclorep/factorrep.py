"""Factorizations of integer polynomials as first-class values.

Three vocabularies describe the same polynomial at different levels of
structure: PlainFactorization lists explicit polynomial factors with
multiplicities; PhiAwareFactorization names cyclotomic factors symbolically as
Phi_k; CAwareFactorization groups them further into C_k = x^k - 1 with signed
multiplicities, where a negative multiplicity means exact division.
Conversions between vocabularies are exact, and expand() recovers the
original polynomial from any of them.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

from .cyclotomic import extract_cyclotomic_factors, phi_poly
from .errors import (
    DomainError,
    InexactDivisionError,
    InvariantViolationError,
    NotAPolynomialError,
    PolyParseError,
)
from .numtheory import divisors, factorize, mobius, totient
from .poly import (
    AnyPoly,
    DensePoly,
    SparsePoly,
    div_exact,
    format_poly,
    gcd,
    parse_poly,
    to_sparse,
)


class PhiFactor(NamedTuple):
    multiplicity: int
    k: int
    degree: int


class CFactor(NamedTuple):
    multiplicity: int
    k: int
    k_factorization: tuple[tuple[int, int], ...]


def _sort_key(f: SparsePoly):
    # deterministic factor order: by degree, then coefficients ascending from
    # the constant term
    return (f.degree, tuple((e, c) for e, c in reversed(f.terms)))


def _normalize_poly_factors(
    entries: Iterable[tuple[int, AnyPoly]], content: int, x_power: int | None
) -> tuple[tuple[tuple[int, SparsePoly], ...], int, int]:
    # fold constants into the content and (when tracked) bare x into x_power;
    # merge duplicates; factors come out primitive with positive leading
    # coefficient, sorted by _sort_key
    xp = 0 if x_power is None else x_power
    acc: dict[SparsePoly, int] = {}
    for m, f in entries:
        m = operator.index(m)
        if m < 1:
            raise DomainError(f"factor multiplicity must be >= 1, got {m}")
        if not isinstance(f, (SparsePoly, DensePoly)):
            raise DomainError(f"factors must be polynomials, got {type(f).__name__}")
        fs = to_sparse(f)
        if fs.is_zero:
            raise DomainError("zero cannot appear as a factor")
        if fs.degree == 0:
            content *= fs.coefficient(0) ** m
            continue
        if x_power is not None and fs.terms == ((1, 1),):
            xp += m
            continue
        c = fs.content()
        if c != 1 or fs.leading_coefficient < 0:
            signed = c if fs.leading_coefficient > 0 else -c
            content *= signed**m
            fs = fs.primitive_part()
        acc[fs] = acc.get(fs, 0) + m
    ordered = tuple(sorted(acc.items(), key=lambda kv: _sort_key(kv[0])))
    return tuple((m, f) for f, m in ordered), content, xp


@dataclass(frozen=True)
class PlainFactorization:
    """content * prod(factor^multiplicity) with explicit polynomial factors."""

    content: int = 1
    factors: tuple[tuple[int, SparsePoly], ...] = ()

    def __init__(self, content: int = 1, factors: Iterable[tuple[int, AnyPoly]] = ()):
        content = operator.index(content)
        norm, content, _ = _normalize_poly_factors(factors, content, None)
        if content == 0:
            raise DomainError("content must be nonzero")
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "factors", norm)


@dataclass(frozen=True)
class PhiAwareFactorization:
    """content * x^x_power * prod(Phi_k^m) * prod(other^m)."""

    content: int = 1
    x_power: int = 0
    phi_factors: tuple[PhiFactor, ...] = ()
    other_factors: tuple[tuple[int, SparsePoly], ...] = ()

    def __init__(
        self,
        content: int = 1,
        x_power: int = 0,
        phi_factors: Iterable[Sequence[int]] = (),
        other_factors: Iterable[tuple[int, AnyPoly]] = (),
    ):
        content = operator.index(content)
        x_power = operator.index(x_power)
        if x_power < 0:
            raise DomainError(f"x_power must be >= 0, got {x_power}")
        merged: dict[int, int] = {}
        for entry in phi_factors:
            if len(entry) == 2:
                m, k = entry
            elif len(entry) == 3:
                m, k, deg = entry
                if deg != totient(k):
                    raise DomainError(f"Phi_{k} has degree {totient(k)}, not {deg}")
            else:
                raise DomainError("phi factor entries must be (multiplicity, k[, degree])")
            m, k = operator.index(m), operator.index(k)
            if k < 1:
                raise DomainError(f"cyclotomic index must be >= 1, got {k}")
            if m < 1:
                raise DomainError(f"multiplicity of Phi_{k} must be >= 1, got {m}")
            merged[k] = merged.get(k, 0) + m
        phis = tuple(PhiFactor(m, k, totient(k)) for k, m in sorted(merged.items()))
        others, content, x_power = _normalize_poly_factors(other_factors, content, x_power)
        if content == 0:
            raise DomainError("content must be nonzero")
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "x_power", x_power)
        object.__setattr__(self, "phi_factors", phis)
        object.__setattr__(self, "other_factors", others)


@dataclass(frozen=True)
class CAwareFactorization:
    """content * x^x_power * prod(C_k^m) * prod(other^m), m possibly negative.

    Negative multiplicities denote exact division; whether the whole value
    denotes a polynomial depends on the net Phi multiplicities, which is
    checked by to_phi_aware and expand, not at construction (so that
    non-polynomial values like C_1^-1 can be written down and rejected).
    """

    content: int = 1
    x_power: int = 0
    c_factors: tuple[CFactor, ...] = ()
    other_factors: tuple[tuple[int, SparsePoly], ...] = ()

    def __init__(
        self,
        content: int = 1,
        x_power: int = 0,
        c_factors: Iterable[Sequence] = (),
        other_factors: Iterable[tuple[int, AnyPoly]] = (),
    ):
        content = operator.index(content)
        x_power = operator.index(x_power)
        if x_power < 0:
            raise DomainError(f"x_power must be >= 0, got {x_power}")
        merged: dict[int, int] = {}
        for entry in c_factors:
            if len(entry) == 2:
                m, k = entry
            elif len(entry) == 3:
                m, k, kfact = entry
                if tuple(kfact) != tuple(factorize(k)):
                    raise DomainError(f"stated factorization of {k} is wrong")
            else:
                raise DomainError("C factor entries must be (multiplicity, k[, factorization])")
            m, k = operator.index(m), operator.index(k)
            if k < 1:
                raise DomainError(f"C index must be >= 1, got {k}")
            if m == 0:
                continue
            merged[k] = merged.get(k, 0) + m
        cs = tuple(
            CFactor(m, k, tuple(factorize(k))) for k, m in sorted(merged.items()) if m != 0
        )
        others, content, x_power = _normalize_poly_factors(other_factors, content, x_power)
        if content == 0:
            raise DomainError("content must be nonzero")
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "x_power", x_power)
        object.__setattr__(self, "c_factors", cs)
        object.__setattr__(self, "other_factors", others)


Factorization = Union[PlainFactorization, PhiAwareFactorization, CAwareFactorization]


def squarefree_decomposition(f: AnyPoly) -> PlainFactorization:
    """Yun's algorithm over the integers: f = content * prod(g_i^i) with the
    g_i pairwise coprime and square-free.

    >>> squarefree_decomposition(parse_poly("x^2+2*x+1")).factors
    ((2, SparsePoly('x+1')),)
    """
    fs = to_sparse(f)
    if fs.is_zero:
        raise DomainError("cannot decompose the zero polynomial")
    signed_content = fs.content() if fs.leading_coefficient > 0 else -fs.content()
    w = fs.primitive_part()
    if w.degree == 0:
        return PlainFactorization(content=signed_content, factors=())
    factors: list[tuple[int, SparsePoly]] = []
    g = gcd(w, w.derivative())
    c = div_exact(w, g)
    d = div_exact(w.derivative(), g) - c.derivative()
    i = 1
    while True:
        if c.degree == 0:
            break
        a = gcd(c, d)
        if a.degree > 0:
            factors.append((i, a))
        c_next = div_exact(c, a)
        d = div_exact(d, a) - c_next.derivative()
        c = c_next
        i += 1
    return PlainFactorization(content=signed_content, factors=factors)


def factor_full(f: AnyPoly) -> PhiAwareFactorization:
    """Factor f into cyclotomic factors Phi_k plus non-cyclotomic cofactors.

    Runs the square-free decomposition first, then extracts the cyclotomic
    part of each square-free block, so equal Phi_k across blocks merge with
    the right multiplicities.  Cofactors are square-free and carry no
    cyclotomic or x factors.

    >>> [tuple(p) for p in factor_full(parse_poly("x^8+x^5+x^3+1")).phi_factors]
    [(2, 2, 1), (1, 6, 2), (1, 10, 4)]
    """
    plain = squarefree_decomposition(f)
    phis: list[tuple[int, int]] = []
    others: list[tuple[int, SparsePoly]] = []
    x_power = 0
    content = plain.content
    for m, block in plain.factors:
        ext = extract_cyclotomic_factors(block)
        for k, mult in ext.decomposition.parts:
            phis.append((m * mult, k))
        x_power += m * ext.x_power
        cof = ext.cofactor
        if cof.degree > 0:
            others.append((m, cof))
        elif cof.coefficient(0) != 1:
            # blocks are primitive with positive leading coefficient, so the
            # extracted cofactor cannot carry content
            raise InvariantViolationError("square-free block lost its normalization")
    return PhiAwareFactorization(
        content=content, x_power=x_power, phi_factors=phis, other_factors=others
    )


def to_c_aware(rep: PhiAwareFactorization) -> CAwareFactorization:
    """Regroup a Phi-aware factorization into C_k = x^k - 1 factors.

    Greedy: scan candidate indices k descending; whenever every divisor of k
    still has positive multiplicity, emit C_k and decrement them all.  The
    leftovers are rewritten through Phi_k = prod_{d|k} (x^d-1)^{mobius(k/d)};
    entries whose net multiplicity is zero disappear.
    """
    if not isinstance(rep, PhiAwareFactorization):
        raise DomainError("to_c_aware expects a PhiAwareFactorization")
    net = {k: m for m, k, _ in rep.phi_factors}
    cmap: dict[int, int] = {}
    for k in sorted(net, reverse=True):
        ds = divisors(k)
        m = min(net.get(d, 0) for d in ds)
        if m >= 1:
            cmap[k] = cmap.get(k, 0) + m
            for d in ds:
                net[d] = net.get(d, 0) - m
    for k, m in sorted(net.items()):
        if not m:
            continue
        for d in divisors(k):
            mu = mobius(k // d)
            if mu:
                cmap[d] = cmap.get(d, 0) + m * mu
    entries = [(m, k) for k, m in sorted(cmap.items()) if m != 0]
    return CAwareFactorization(
        content=rep.content,
        x_power=rep.x_power,
        c_factors=entries,
        other_factors=rep.other_factors,
    )


def _net_phi_of_c(rep: CAwareFactorization) -> dict[int, int]:
    # net multiplicity of Phi_d implied by the C factors, for every d dividing
    # some C index
    net: dict[int, int] = {}
    for m, k, _ in rep.c_factors:
        for d in divisors(k):
            net[d] = net.get(d, 0) + m
    return net


def to_phi_aware(rep: CAwareFactorization) -> PhiAwareFactorization:
    """Expand C factors into their net Phi factors.

    Raises NotAPolynomialError (carrying the offending divisor) when some
    Phi_d ends up with negative net multiplicity.
    """
    if not isinstance(rep, CAwareFactorization):
        raise DomainError("to_phi_aware expects a CAwareFactorization")
    net = _net_phi_of_c(rep)
    for d in sorted(net):
        if net[d] < 0:
            raise NotAPolynomialError(
                f"net multiplicity of Phi_{d} is {net[d]}", divisor=d
            )
    phis = [(m, d) for d, m in sorted(net.items()) if m > 0]
    return PhiAwareFactorization(
        content=rep.content,
        x_power=rep.x_power,
        phi_factors=phis,
        other_factors=rep.other_factors,
    )


def to_plain(rep: PhiAwareFactorization) -> PlainFactorization:
    """Spell a Phi-aware factorization plainly: symbolic factors become
    explicit polynomials, the x power becomes an ordinary factor."""
    if not isinstance(rep, PhiAwareFactorization):
        raise DomainError("to_plain expects a PhiAwareFactorization")
    factors: list[tuple[int, SparsePoly]] = [
        (m, phi_poly(k)) for m, k, _ in rep.phi_factors
    ]
    factors.extend(rep.other_factors)
    if rep.x_power:
        factors.append((rep.x_power, SparsePoly.x()))
    return PlainFactorization(content=rep.content, factors=factors)


def expand(rep: Factorization) -> SparsePoly:
    """Multiply a factorization back out to a single polynomial.

    C-aware values must pass the net-nonnegativity check; their negative
    multiplicities are applied as exact divisions.

    >>> expand(PlainFactorization(content=7))
    SparsePoly('7')
    """
    if isinstance(rep, PlainFactorization):
        out = SparsePoly.constant(rep.content)
        for m, f in rep.factors:
            out = out * f**m
        return out
    if isinstance(rep, PhiAwareFactorization):
        out = SparsePoly.constant(rep.content).shift(rep.x_power)
        for m, k, _ in rep.phi_factors:
            out = out * phi_poly(k) ** m
        for m, f in rep.other_factors:
            out = out * f**m
        return out
    if isinstance(rep, CAwareFactorization):
        net = _net_phi_of_c(rep)
        for d in sorted(net):
            if net[d] < 0:
                raise NotAPolynomialError(
                    f"net multiplicity of Phi_{d} is {net[d]}", divisor=d
                )
        num = SparsePoly.constant(rep.content).shift(rep.x_power)
        den = SparsePoly.one()
        for m, k, _ in rep.c_factors:
            binom = SparsePoly._raw(((k, 1), (0, -1)))
            if m > 0:
                num = num * binom**m
            else:
                den = den * binom**-m
        for m, f in rep.other_factors:
            num = num * f**m
        if den.degree == 0:
            return num
        try:
            return div_exact(num, den)
        except InexactDivisionError as exc:
            raise InvariantViolationError(
                "net-nonnegative C factorization failed to divide exactly"
            ) from exc
    raise DomainError(f"not a factorization value: {type(rep).__name__}")


def degree(rep: Factorization) -> int:
    """Degree of expand(rep), computed without expanding."""
    if isinstance(rep, PlainFactorization):
        return sum(m * f.degree for m, f in rep.factors)
    if isinstance(rep, PhiAwareFactorization):
        return (
            rep.x_power
            + sum(m * d for m, _, d in rep.phi_factors)
            + sum(m * f.degree for m, f in rep.other_factors)
        )
    if isinstance(rep, CAwareFactorization):
        return (
            rep.x_power
            + sum(m * k for m, k, _ in rep.c_factors)
            + sum(m * f.degree for m, f in rep.other_factors)
        )
    raise DomainError(f"not a factorization value: {type(rep).__name__}")


def num_irreducible_factors(rep: Factorization) -> int:
    """Number of distinct irreducible factors the representation names.

    For Phi-aware values this is the number of distinct Phi_k plus the number
    of distinct other factors; C-aware values count the distinct Phi_k with
    positive net multiplicity.  Plain factorizations count their factor
    blocks.  The x factor is not counted.
    """
    if isinstance(rep, PlainFactorization):
        return len(rep.factors)
    if isinstance(rep, PhiAwareFactorization):
        return len(rep.phi_factors) + len(rep.other_factors)
    if isinstance(rep, CAwareFactorization):
        net = _net_phi_of_c(rep)
        return sum(1 for m in net.values() if m > 0) + len(rep.other_factors)
    raise DomainError(f"not a factorization value: {type(rep).__name__}")


def multiplicity_of_phi(rep: Factorization, k: int) -> int:
    """Net multiplicity of Phi_k in the factorization.

    Phi- and C-aware values answer from their symbolic part alone (their
    other factors carry no cyclotomic divisors by construction); plain
    factorizations divide each factor by Phi_k repeatedly.
    """
    k = operator.index(k)
    if k < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {k}")
    if isinstance(rep, PhiAwareFactorization):
        return sum(m for m, kk, _ in rep.phi_factors if kk == k)
    if isinstance(rep, CAwareFactorization):
        return sum(m for m, kk, _ in rep.c_factors if kk % k == 0)
    if isinstance(rep, PlainFactorization):
        pk = phi_poly(k)
        total = 0
        for m, f in rep.factors:
            g = f
            while g.degree >= pk.degree:
                try:
                    g = div_exact(g, pk)
                except InexactDivisionError:
                    break
                total += m
        return total
    raise DomainError(f"not a factorization value: {type(rep).__name__}")


def format_factorization(rep: Factorization) -> str:
    """Canonical text: items joined by ' * '.

    Items in order: the content when it is not 1 (always shown if there is
    nothing else), x^v, then Phi_k^m or C_k^m ascending in k, then other
    factors parenthesized.  Exponents of 1 are elided.

    >>> format_factorization(PlainFactorization(content=1))
    '1'
    """
    items: list[str] = []
    if isinstance(rep, PlainFactorization):
        if rep.content != 1:
            items.append(str(rep.content))
        for m, f in rep.factors:
            if f.terms == ((1, 1),):
                items.append(_pow_text("x", m))
            else:
                items.append(_pow_text(f"({format_poly(f)})", m))
        return " * ".join(items) if items else "1"
    if isinstance(rep, PhiAwareFactorization):
        sym = [(f"Phi_{k}", m) for m, k, _ in rep.phi_factors]
    elif isinstance(rep, CAwareFactorization):
        sym = [(f"C_{k}", m) for m, k, _ in rep.c_factors]
    else:
        raise DomainError(f"not a factorization value: {type(rep).__name__}")
    if rep.content != 1:
        items.append(str(rep.content))
    if rep.x_power:
        items.append(_pow_text("x", rep.x_power))
    for name, m in sym:
        items.append(_pow_text(name, m))
    for m, f in rep.other_factors:
        items.append(_pow_text(f"({format_poly(f)})", m))
    return " * ".join(items) if items else "1"


def _pow_text(base: str, m: int) -> str:
    return base if m == 1 else f"{base}^{m}"


def parse_factorization(text: str) -> Factorization:
    """Parse factorization text: items joined by '*' at parenthesis depth 0.

    Item forms: integer content, x[^v], Phi_k[^m], C_k[^m] (m may be negative
    only on C items), and (poly)[^m].  Any C item makes the result C-aware,
    else any Phi item makes it Phi-aware, else it is a plain factorization
    (where x^v becomes an explicit factor x with multiplicity v).

    >>> format_poly(expand(parse_factorization("C_6 * C_3^-1")))
    'x^3+1'
    """
    pieces: list[tuple[str, int]] = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise PolyParseError("unbalanced ')'", i)
        elif ch == "*" and depth == 0:
            # '*' inside a parenthesized polynomial stays with the polynomial
            pieces.append((text[start:i], start))
            start = i + 1
    if depth != 0:
        raise PolyParseError("unbalanced '('", len(text))
    pieces.append((text[start:], start))

    content = 1
    x_power = 0
    phi_entries: list[tuple[int, int]] = []
    c_entries: list[tuple[int, int]] = []
    poly_entries: list[tuple[int, SparsePoly]] = []
    saw_phi = saw_c = False

    for raw, offset in pieces:
        stripped = raw.strip()
        pos = offset + (len(raw) - len(raw.lstrip()))
        if not stripped:
            raise PolyParseError("empty factorization item", pos)
        if stripped.startswith("Phi_"):
            k, m = _parse_indexed(stripped[4:], pos + 4, allow_negative=False)
            phi_entries.append((m, k))
            saw_phi = True
        elif stripped.startswith("C_"):
            k, m = _parse_indexed(stripped[2:], pos + 2, allow_negative=True)
            c_entries.append((m, k))
            saw_c = True
        elif stripped.startswith("("):
            body, m = _split_power(stripped, pos, allow_negative=False)
            if not body.endswith(")"):
                raise PolyParseError("expected ')'", pos + len(body))
            inner = body[1:-1]
            try:
                f = parse_poly(inner)
            except PolyParseError as exc:
                raise PolyParseError(exc.message, pos + 1 + exc.position) from None
            poly_entries.append((m, f))
        elif stripped == "x" or stripped.startswith("x^"):
            base, m = _split_power(stripped, pos, allow_negative=False)
            if base != "x":
                raise PolyParseError(f"unrecognized item {stripped!r}", pos)
            x_power += m
        else:
            # bare integer content, possibly negative
            body = stripped
            neg = body.startswith("-")
            digits = body[1:] if neg else body
            if not digits or not digits.isdigit():
                raise PolyParseError(f"unrecognized item {stripped!r}", pos)
            content *= -int(digits) if neg else int(digits)

    if saw_c:
        if saw_phi:
            raise PolyParseError("cannot mix Phi_ and C_ items", 0)
        return CAwareFactorization(
            content=content, x_power=x_power, c_factors=c_entries, other_factors=poly_entries
        )
    if saw_phi:
        return PhiAwareFactorization(
            content=content, x_power=x_power, phi_factors=phi_entries, other_factors=poly_entries
        )
    factors = list(poly_entries)
    if x_power:
        factors.append((x_power, SparsePoly.x()))
    return PlainFactorization(content=content, factors=factors)


def _split_power(item: str, offset: int, allow_negative: bool) -> tuple[str, int]:
    # split "base^m" at the last '^' outside parentheses; returns (base, m)
    depth = 0
    for i in range(len(item) - 1, -1, -1):
        ch = item[i]
        if ch == ")":
            depth += 1
        elif ch == "(":
            depth -= 1
        elif ch == "^" and depth == 0:
            return item[:i], _parse_mult(item[i + 1 :], offset + i + 1, allow_negative)
    return item, 1


def _parse_mult(s: str, pos: int, allow_negative: bool) -> int:
    s = s.strip()
    neg = s.startswith("-")
    digits = s[1:] if neg else s
    if not digits or not digits.isdigit():
        raise PolyParseError("expected an exponent", pos)
    m = -int(digits) if neg else int(digits)
    if neg and not allow_negative:
        raise PolyParseError("negative multiplicity is only allowed on C items", pos)
    if m == 0:
        raise PolyParseError("zero multiplicity", pos)
    return m


def _parse_indexed(rest: str, pos: int, allow_negative: bool) -> tuple[int, int]:
    # rest is "k" or "k^m" after the Phi_/C_ prefix
    body, m = _split_power(rest, pos, allow_negative)
    body = body.strip()
    if not body.isdigit():
        raise PolyParseError("expected an index", pos)
    k = int(body)
    if k < 1:
        raise PolyParseError("index must be >= 1", pos)
    return k, m
