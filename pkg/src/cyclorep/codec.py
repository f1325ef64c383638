"""Bit-exact binary encoding of polynomials and factorizations.

A blob is a 7-byte header (magic "CP", version, layout tag, inner polynomial
tag, N, K) followed by an MSB-first bitstream padded with zero bits to a byte
boundary.  N is the bit width of every degree, count, index, and multiplicity
field; K is the width of the single hoisted coefficient-size field k, and
coefficients are stored as (k+1)-bit two's complement.  Nested polynomials
inside factorizations do not repeat the k field.

The byte format is normative: identical values encode to identical bytes.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Union

from .errors import CapacityError, DomainError, InvariantViolationError, MalformedBlobError
from .factorrep import (
    CAwareFactorization,
    Factorization,
    PhiAwareFactorization,
    PlainFactorization,
)
from .factorrep import degree as rep_degree
from .numtheory import divisor_count, is_prime, totient
from .poly import AnyPoly, DensePoly, SparsePoly, to_dense, to_sparse

MAGIC = b"CP"
VERSION = 1

LAYOUT_DENSE = 0
LAYOUT_SPARSE = 1
LAYOUT_PLAIN = 2
LAYOUT_PHI = 3
LAYOUT_C = 4

LAYOUT_NAMES = {
    LAYOUT_DENSE: "dense",
    LAYOUT_SPARSE: "sparse",
    LAYOUT_PLAIN: "plain",
    LAYOUT_PHI: "phi",
    LAYOUT_C: "c",
}

Encodable = Union[AnyPoly, Factorization]


@dataclass(frozen=True)
class EncodedBlob:
    layout_tag: int
    inner_poly_tag: int
    n_param: int
    k_param: int
    body: bytes

    def to_bytes(self) -> bytes:
        return (
            MAGIC
            + bytes((VERSION, self.layout_tag, self.inner_poly_tag, self.n_param, self.k_param))
            + self.body
        )

    @classmethod
    def from_bytes(cls, raw: bytes) -> "EncodedBlob":
        if len(raw) < 7:
            raise MalformedBlobError(f"blob is {len(raw)} bytes; the header alone is 7")
        if raw[:2] != MAGIC:
            raise MalformedBlobError(f"bad magic {raw[:2]!r}")
        if raw[2] != VERSION:
            raise MalformedBlobError(f"unsupported version {raw[2]}")
        layout, inner, n_param, k_param = raw[3], raw[4], raw[5], raw[6]
        if layout not in LAYOUT_NAMES:
            raise MalformedBlobError(f"unknown layout tag {layout}")
        if inner not in (LAYOUT_DENSE, LAYOUT_SPARSE):
            raise MalformedBlobError(f"inner polynomial tag must be 0 or 1, got {inner}")
        if not 1 <= n_param <= 63:
            raise MalformedBlobError(f"N parameter out of range: {n_param}")
        if not 1 <= k_param <= 63:
            raise MalformedBlobError(f"K parameter out of range: {k_param}")
        return cls(layout, inner, n_param, k_param, raw[7:])


class _BitWriter:
    def __init__(self):
        self._acc = 0
        self._bits = 0

    def write(self, value: int, nbits: int, field: str) -> None:
        if value < 0 or value >> nbits:
            raise CapacityError(
                f"{field} value {value} does not fit in {nbits} unsigned bits", field=field
            )
        self._acc = (self._acc << nbits) | value
        self._bits += nbits

    def write_signed(self, value: int, nbits: int, field: str) -> None:
        half = 1 << (nbits - 1)
        if not -half <= value < half:
            raise CapacityError(
                f"{field} value {value} does not fit in {nbits} two's-complement bits",
                field=field,
            )
        self._acc = (self._acc << nbits) | (value & ((1 << nbits) - 1))
        self._bits += nbits

    def finish(self) -> tuple[bytes, int]:
        pad = -self._bits % 8
        return ((self._acc << pad).to_bytes((self._bits + pad) // 8, "big"), self._bits)


class _BitReader:
    def __init__(self, data: bytes):
        self._value = int.from_bytes(data, "big")
        self._total = len(data) * 8
        self._pos = 0

    def read(self, nbits: int) -> int:
        if self._pos + nbits > self._total:
            raise MalformedBlobError("truncated body")
        shift = self._total - self._pos - nbits
        self._pos += nbits
        return (self._value >> shift) & ((1 << nbits) - 1)

    def read_signed(self, nbits: int) -> int:
        v = self.read(nbits)
        return v - (1 << nbits) if v >> (nbits - 1) else v

    def finish(self) -> None:
        tail = self._total - self._pos
        if tail >= 8:
            raise MalformedBlobError(f"{tail} trailing bits after the value")
        if self._value & ((1 << tail) - 1):
            raise MalformedBlobError("nonzero padding bits")


def _coeff_bits(c: int) -> int:
    # smallest k with -2^k <= c <= 2^k - 1
    return c.bit_length() if c >= 0 else (-c - 1).bit_length()


def _check_param(value: int, name: str) -> int:
    value = operator.index(value)
    if not 1 <= value <= 63:
        raise DomainError(f"{name} must be between 1 and 63, got {value}")
    return value


def _synthetic_others(rep: Union[PhiAwareFactorization, CAwareFactorization]):
    # x_power and content ride along as ordinary factor entries; the
    # constructors fold them back on decode, so the round trip is exact
    entries: list[tuple[int, SparsePoly]] = []
    if rep.x_power:
        entries.append((rep.x_power, SparsePoly.x()))
    if rep.content != 1:
        entries.append((1, SparsePoly.constant(rep.content)))
    entries.extend(rep.other_factors)
    return entries


def _plain_entries(rep: PlainFactorization):
    entries: list[tuple[int, SparsePoly]] = []
    if rep.content != 1:
        entries.append((1, SparsePoly.constant(rep.content)))
    entries.extend(rep.factors)
    return entries


def _max_coeff_bits(polys) -> int:
    k = 0
    for f in polys:
        for _, c in to_sparse(f).terms:
            bits = _coeff_bits(c)
            if bits > k:
                k = bits
    return k


def _write_inner_poly(w: _BitWriter, f: SparsePoly, inner: int, n_param: int, kbits: int) -> None:
    if inner == LAYOUT_DENSE:
        dense = to_dense(f).coefficients
        w.write(len(dense) - 1, n_param, "degree")
        for c in dense:
            w.write_signed(c, kbits + 1, "coefficient")
    else:
        terms = f.terms
        w.write(len(terms), n_param, "term count")
        for e, c in terms:
            w.write(e, n_param, "degree")
            w.write_signed(c, kbits + 1, "coefficient")


def _read_inner_poly(r: _BitReader, inner: int, n_param: int, kbits: int) -> SparsePoly:
    if inner == LAYOUT_DENSE:
        deg = r.read(n_param)
        coeffs = [r.read_signed(kbits + 1) for _ in range(deg + 1)]
        if deg > 0 and coeffs[-1] == 0:
            raise MalformedBlobError("dense polynomial with zero leading coefficient")
        return to_sparse(DensePoly(coeffs))
    count = r.read(n_param)
    terms = []
    prev = None
    for _ in range(count):
        e = r.read(n_param)
        c = r.read_signed(kbits + 1)
        if prev is not None and e >= prev:
            raise MalformedBlobError("sparse exponents must be strictly descending")
        if c == 0:
            raise MalformedBlobError("zero coefficient in sparse term")
        terms.append((e, c))
        prev = e
    return SparsePoly._raw(tuple(terms))


def encode(value: Encodable, n_param: int = 16, k_param: int = 16, inner: str = "sparse") -> EncodedBlob:
    """Encode a polynomial or factorization into a blob.

    N and K must lie in 1..63.  ``inner`` selects the nested polynomial layout
    for factorization values ("sparse" or "dense"); polynomial values encode
    in their own layout.
    """
    n_param = _check_param(n_param, "N")
    k_param = _check_param(k_param, "K")
    if inner not in ("sparse", "dense"):
        raise DomainError(f"inner layout must be 'sparse' or 'dense', got {inner!r}")
    inner_tag = LAYOUT_SPARSE if inner == "sparse" else LAYOUT_DENSE
    body, _, layout, inner_tag = _encode_body(value, n_param, k_param, inner_tag)
    return EncodedBlob(layout, inner_tag, n_param, k_param, body)


def measured_bits(
    value: Encodable, n_param: int = 16, k_param: int = 16, inner: str = "sparse"
) -> int:
    """Number of body bits encode() produces, excluding header and padding."""
    n_param = _check_param(n_param, "N")
    k_param = _check_param(k_param, "K")
    if inner not in ("sparse", "dense"):
        raise DomainError(f"inner layout must be 'sparse' or 'dense', got {inner!r}")
    inner_tag = LAYOUT_SPARSE if inner == "sparse" else LAYOUT_DENSE
    _, bits, _, _ = _encode_body(value, n_param, k_param, inner_tag)
    return bits


def _encode_body(value, n_param, k_param, inner_tag):
    w = _BitWriter()
    if isinstance(value, DensePoly):
        kbits = _max_coeff_bits([value])
        w.write(value.degree, n_param, "degree")
        w.write(kbits, k_param, "coefficient size")
        for c in value.coefficients:
            w.write_signed(c, kbits + 1, "coefficient")
        body, bits = w.finish()
        return body, bits, LAYOUT_DENSE, LAYOUT_DENSE
    if isinstance(value, SparsePoly):
        kbits = _max_coeff_bits([value])
        w.write(kbits, k_param, "coefficient size")
        w.write(value.term_count, n_param, "term count")
        for e, c in value.terms:
            w.write(e, n_param, "degree")
            w.write_signed(c, kbits + 1, "coefficient")
        body, bits = w.finish()
        return body, bits, LAYOUT_SPARSE, LAYOUT_SPARSE
    if isinstance(value, PlainFactorization):
        entries = _plain_entries(value)
        _write_plain_block_with_k(w, entries, inner_tag, n_param, k_param)
        body, bits = w.finish()
        return body, bits, LAYOUT_PLAIN, inner_tag
    if isinstance(value, PhiAwareFactorization):
        w.write(len(value.phi_factors), n_param, "phi factor count")
        for m, k, deg in value.phi_factors:
            w.write(m, n_param, "multiplicity")
            w.write(k, n_param, "phi index")
            w.write(deg, n_param, "phi degree")
        _write_plain_block_with_k(w, _synthetic_others(value), inner_tag, n_param, k_param)
        body, bits = w.finish()
        return body, bits, LAYOUT_PHI, inner_tag
    if isinstance(value, CAwareFactorization):
        w.write(len(value.c_factors), n_param, "C factor count")
        for m, k, kfact in value.c_factors:
            w.write_signed(m, n_param, "C multiplicity")
            w.write(k, n_param, "C index")
            num = sum(e for _, e in kfact)
            w.write(num, n_param, "prime count")
            for p, e in kfact:
                for _ in range(e):
                    w.write(p, n_param, "prime")
        _write_plain_block_with_k(w, _synthetic_others(value), inner_tag, n_param, k_param)
        body, bits = w.finish()
        return body, bits, LAYOUT_C, inner_tag
    raise DomainError(f"cannot encode values of type {type(value).__name__}")


def _write_plain_block_with_k(w, entries, inner_tag, n_param, k_param):
    kbits = _max_coeff_bits(f for _, f in entries)
    w.write(kbits, k_param, "coefficient size")
    w.write(len(entries), n_param, "factor count")
    for m, f in entries:
        w.write(m, n_param, "multiplicity")
        _write_inner_poly(w, f, inner_tag, n_param, kbits)


def _read_plain_block_entries(r, inner_tag, n_param, k_param):
    kbits = r.read(k_param)
    count = r.read(n_param)
    entries = []
    for _ in range(count):
        m = r.read(n_param)
        if m == 0:
            raise MalformedBlobError("zero multiplicity")
        entries.append((m, _read_inner_poly(r, inner_tag, n_param, kbits)))
    return entries


def decode(blob: Union[EncodedBlob, bytes]) -> Encodable:
    """Decode a blob back to the value it encodes.

    decode(encode(v)) == v for every encodable value; malformed input raises
    MalformedBlobError.
    """
    if isinstance(blob, (bytes, bytearray)):
        blob = EncodedBlob.from_bytes(bytes(blob))
    r = _BitReader(blob.body)
    n_param, k_param = blob.n_param, blob.k_param
    layout = blob.layout_tag
    if layout == LAYOUT_DENSE:
        deg = r.read(n_param)
        kbits = r.read(k_param)
        coeffs = [r.read_signed(kbits + 1) for _ in range(deg + 1)]
        if deg > 0 and coeffs[-1] == 0:
            raise MalformedBlobError("dense polynomial with zero leading coefficient")
        r.finish()
        return DensePoly(coeffs)
    if layout == LAYOUT_SPARSE:
        kbits = r.read(k_param)
        count = r.read(n_param)
        terms = []
        prev = None
        for _ in range(count):
            e = r.read(n_param)
            c = r.read_signed(kbits + 1)
            if prev is not None and e >= prev:
                raise MalformedBlobError("sparse exponents must be strictly descending")
            if c == 0:
                raise MalformedBlobError("zero coefficient in sparse term")
            terms.append((e, c))
            prev = e
        r.finish()
        return SparsePoly._raw(tuple(terms))
    inner_tag = blob.inner_poly_tag
    if layout == LAYOUT_PLAIN:
        entries = _read_plain_block_entries(r, inner_tag, n_param, k_param)
        r.finish()
        return PlainFactorization(content=1, factors=entries)
    if layout == LAYOUT_PHI:
        count = r.read(n_param)
        phis = []
        prev = 0
        for _ in range(count):
            m = r.read(n_param)
            k = r.read(n_param)
            deg = r.read(n_param)
            if m == 0 or k == 0:
                raise MalformedBlobError("zero multiplicity or index in phi entry")
            if k <= prev:
                raise MalformedBlobError("phi indices must be strictly ascending")
            if deg != totient(k):
                raise MalformedBlobError(f"phi entry says deg Phi_{k} = {deg}")
            phis.append((m, k, deg))
            prev = k
        entries = _read_plain_block_entries(r, inner_tag, n_param, k_param)
        r.finish()
        return PhiAwareFactorization(content=1, x_power=0, phi_factors=phis, other_factors=entries)
    if layout == LAYOUT_C:
        count = r.read(n_param)
        cs = []
        prev = 0
        for _ in range(count):
            m = r.read_signed(n_param)
            k = r.read(n_param)
            if m == 0 or k == 0:
                raise MalformedBlobError("zero multiplicity or index in C entry")
            if k <= prev:
                raise MalformedBlobError("C indices must be strictly ascending")
            num = r.read(n_param)
            primes = [r.read(n_param) for _ in range(num)]
            prod = 1
            last = 1
            for p in primes:
                if p < 2 or not is_prime(p) or p < last:
                    raise MalformedBlobError(f"bad prime list in C entry for k={k}")
                prod *= p
                last = p
            if prod != k:
                raise MalformedBlobError(f"prime list of C entry multiplies to {prod}, not {k}")
            cs.append((m, k))
            prev = k
        entries = _read_plain_block_entries(r, inner_tag, n_param, k_param)
        r.finish()
        return CAwareFactorization(content=1, x_power=0, c_factors=cs, other_factors=entries)
    raise MalformedBlobError(f"unknown layout tag {layout}")


@dataclass(frozen=True)
class SizeReport:
    """Measured body size next to the closed-form estimate, when one exists."""

    layout: str
    measured_bits: int
    formula_bits: int | None
    parameters: tuple[tuple[str, int], ...]


def size_report(value: Encodable, n_param: int = 16, k_param: int = 16, inner: str = "sparse") -> SizeReport:
    """Measure a value's encoded size and evaluate the matching closed form.

    The closed forms cover dense and sparse polynomials exactly and the
    factorization layouts as per-entry overhead only; C-aware values have no
    closed form and report formula_bits None.
    """
    measured = measured_bits(value, n_param, k_param, inner)
    if isinstance(value, DensePoly):
        kbits = _max_coeff_bits([value])
        n = value.degree
        formula = formula_dense_bits(n, kbits) if n >= 1 and kbits >= 1 else None
        return SizeReport("dense", measured, formula, (("n", n), ("k", kbits)))
    if isinstance(value, SparsePoly):
        kbits = _max_coeff_bits([value])
        n = value.degree
        t = value.term_count
        formula = formula_sparse_bits(n, t, kbits) if n >= 1 and kbits >= 1 else None
        return SizeReport("sparse", measured, formula, (("n", n), ("t", t), ("k", kbits)))
    if isinstance(value, PlainFactorization):
        kbits = _max_coeff_bits(f for _, f in _plain_entries(value))
        n = rep_degree(value)
        f_count = len(value.factors)
        formula = formula_factorization_overhead_bits(f_count, n) if n >= 1 else None
        return SizeReport(
            "plain", measured, formula, (("n", n), ("f", f_count), ("k", kbits))
        )
    if isinstance(value, PhiAwareFactorization):
        kbits = _max_coeff_bits(f for _, f in _synthetic_others(value))
        n = rep_degree(value)
        l_count = len(value.phi_factors)
        formula = formula_phi_overhead_bits(l_count, n) if n >= 1 else None
        return SizeReport(
            "phi",
            measured,
            formula,
            (("n", n), ("l", l_count), ("f", len(value.other_factors)), ("k", kbits)),
        )
    if isinstance(value, CAwareFactorization):
        kbits = _max_coeff_bits(f for _, f in _synthetic_others(value))
        n = rep_degree(value)
        return SizeReport(
            "c",
            measured,
            None,
            (("n", n), ("c", len(value.c_factors)), ("f", len(value.other_factors)), ("k", kbits)),
        )
    raise DomainError(f"cannot size values of type {type(value).__name__}")


def ceil_log2(x: int) -> int:
    """Smallest integer >= log2(x), for x >= 1."""
    x = operator.index(x)
    if x < 1:
        raise DomainError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


def formula_dense_bits(n: int, k: int) -> int:
    """(k+1)(n+1) + ceil(log2 k) + ceil(log2 n): dense polynomial of degree n,
    coefficient size k."""
    if n < 1 or k < 1:
        raise DomainError("formula_dense_bits needs n >= 1 and k >= 1")
    return (k + 1) * (n + 1) + ceil_log2(k) + ceil_log2(n)


def formula_sparse_bits(n: int, t: int, k: int) -> int:
    """ceil(log2 n) + t*(k + 1 + ceil(log2 n)): sparse polynomial of degree n
    with t terms."""
    if n < 1 or t < 0 or k < 1:
        raise DomainError("formula_sparse_bits needs n >= 1, t >= 0, k >= 1")
    return ceil_log2(n) + t * (k + 1 + ceil_log2(n))


def formula_factorization_overhead_bits(f: int, n: int) -> int:
    """(f+1) * ceil(log2 n): bookkeeping overhead of a plain factorization with
    f factors, excluding the factor polynomials themselves."""
    if n < 1 or f < 0:
        raise DomainError("formula_factorization_overhead_bits needs n >= 1, f >= 0")
    return (f + 1) * ceil_log2(n)


def formula_phi_overhead_bits(l: int, n: int) -> int:
    """(3l+1) * ceil(log2 n): bookkeeping of l symbolic Phi entries."""
    if n < 1 or l < 0:
        raise DomainError("formula_phi_overhead_bits needs n >= 1, l >= 0")
    return (3 * l + 1) * ceil_log2(n)


def formula_phi_factored_table_bits(n: int) -> int:
    """(2*d(n)+1) * ceil(log2 n): the factored Phi row as tabulated, which
    disagrees with (3l+1)*log n by d(n)*log n; both are kept verbatim."""
    if n < 1:
        raise DomainError("formula_phi_factored_table_bits needs n >= 1")
    return (2 * divisor_count(n) + 1) * ceil_log2(n)


def _asymptotic_factored_bits(n: int) -> int:
    # n^(1 + log 2 / log log n) * log2(e), rounded up; needs log log n > 0
    if n < 3:
        raise DomainError("the factored-form asymptotic needs n >= 3")
    value = n ** (1.0 + math.log(2.0) / math.log(math.log(n))) * math.log2(math.e)
    return math.ceil(value)


_TABLE_FORMS = ("expanded", "square-free", "factored")
_TABLE_VOCABS = ("dense", "sparse", "phi", "c")


def formula_table2_bits(vocab: str, form: str, n: int) -> int:
    """Closed-form cell of the x^n - 1 representation table.

    Rows: dense, sparse, phi, c; columns: expanded, square-free, factored.
    The square-free column is tabulated as "same as factored" for every row.
    """
    if vocab not in _TABLE_VOCABS or form not in _TABLE_FORMS:
        raise DomainError(f"no table cell for vocab={vocab!r}, form={form!r}")
    if n < 1:
        raise DomainError(f"table formulas need n >= 1, got {n}")
    lg = ceil_log2(n)
    if form == "expanded":
        return 2 * (n + 1) + lg if vocab == "dense" else 3 * lg
    if vocab in ("dense", "sparse"):
        return _asymptotic_factored_bits(n)
    if vocab == "phi":
        return formula_phi_factored_table_bits(n)
    return lg


def formula_table3_bits(vocab: str, form: str, n: int) -> int:
    """Closed-form cell of the (x^p - 1)(x^q - 1) representation table, keyed
    on n = p + q."""
    if vocab not in _TABLE_VOCABS or form not in _TABLE_FORMS:
        raise DomainError(f"no table cell for vocab={vocab!r}, form={form!r}")
    if n < 1:
        raise DomainError(f"table formulas need n >= 1, got {n}")
    lg = ceil_log2(n)
    if form == "expanded":
        return 2 * (n + 1) + lg if vocab == "dense" else 4 * lg
    if vocab == "dense":
        if form == "square-free":
            return (1 + lg) * (n + 2) + 4 * lg
        return 2 * (n + 3) + 6 * lg
    if vocab == "sparse":
        if form == "square-free":
            return (2 * n + 2) * lg
        return (n + 10) * lg
    if vocab == "phi":
        return 6 * lg
    return 2 * lg


def formula_size_bits(layout: str, **parameters: int) -> int:
    """Dispatch to the closed-form size formulas by name.

    Layouts: "dense" (n, k), "sparse" (n, t, k), "factorization-overhead"
    (f, n), "phi-overhead" (l, n), "phi-factored-table" (n).  The table cells
    have their own entry points (formula_table2_bits, formula_table3_bits).
    """
    try:
        if layout == "dense":
            return formula_dense_bits(parameters["n"], parameters["k"])
        if layout == "sparse":
            return formula_sparse_bits(parameters["n"], parameters["t"], parameters["k"])
        if layout == "factorization-overhead":
            return formula_factorization_overhead_bits(parameters["f"], parameters["n"])
        if layout == "phi-overhead":
            return formula_phi_overhead_bits(parameters["l"], parameters["n"])
        if layout == "phi-factored-table":
            return formula_phi_factored_table_bits(parameters["n"])
    except KeyError as exc:
        raise DomainError(f"missing parameter {exc.args[0]!r} for layout {layout!r}") from None
    raise DomainError(f"unsupported formula layout {layout!r}")
