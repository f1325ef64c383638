"""The three reproducible tables: height records, and size comparisons of the
four vocabularies on x^n - 1 and on (x^p - 1)(x^q - 1).

Each builder returns TableRow values; rendering (aligned text, CSV) is the
CLI's job.  Measured sizes come from the codec on actually-constructed
representations; formula values evaluate the corresponding closed-form cell.
"""

from __future__ import annotations

from typing import NamedTuple, Union

from .codec import formula_table2_bits, formula_table3_bits, measured_bits
from .cyclotomic import c_poly, height_records
from .errors import DomainError
from .factorrep import (
    CAwareFactorization,
    PhiAwareFactorization,
    factor_full,
    squarefree_decomposition,
    to_c_aware,
    to_plain,
)
from .numtheory import is_prime
from .poly import AnyPoly, to_dense, to_sparse


class TableRow(NamedTuple):
    label: str
    columns: tuple[tuple[str, Union[int, str]], ...]


def height_record_rows(k_max: int) -> list[TableRow]:
    """Rows of the height-record table: first k where each record height occurs.

    The trivial height-1 record at k = 1 is omitted, matching the published
    table, which starts at height 2.
    """
    rows = []
    for rec in height_records(k_max):
        if rec.height < 2:
            continue
        rows.append(
            TableRow(
                label=str(rec.height),
                columns=(
                    ("height", rec.height),
                    ("first_k", rec.first_k),
                    ("phi_of_k", rec.phi_of_k),
                ),
            )
        )
    return rows


def _representations(f: AnyPoly):
    # (vocab, form) -> encodable value; square-free and factored coincide for
    # the phi and c vocabularies, which have no way to leave blocks unsplit
    fs = to_sparse(f)
    phi_rep = factor_full(fs)
    c_rep = to_c_aware(phi_rep)
    sqfree = squarefree_decomposition(fs)
    plain_full = to_plain(phi_rep)
    return {
        ("dense", "expanded"): to_dense(fs),
        ("dense", "square-free"): (sqfree, "dense"),
        ("dense", "factored"): (plain_full, "dense"),
        ("sparse", "expanded"): fs,
        ("sparse", "square-free"): (sqfree, "sparse"),
        ("sparse", "factored"): (plain_full, "sparse"),
        ("phi", "expanded"): PhiAwareFactorization(other_factors=((1, fs),)),
        ("phi", "square-free"): phi_rep,
        ("phi", "factored"): phi_rep,
        ("c", "expanded"): CAwareFactorization(other_factors=((1, fs),)),
        ("c", "square-free"): c_rep,
        ("c", "factored"): c_rep,
    }


_FORMS = ("expanded", "square-free", "factored")
_VOCABS = ("dense", "sparse", "phi", "c")


def _size_rows(f: AnyPoly, formula_n: int, which_table: int, n_param: int, k_param: int):
    reps = _representations(f)
    rows = []
    for vocab in _VOCABS:
        for form in _FORMS:
            value = reps[(vocab, form)]
            inner = "sparse"
            if isinstance(value, tuple):
                value, inner = value
            measured = measured_bits(value, n_param, k_param, inner=inner)
            if which_table == 2:
                formula = formula_table2_bits(vocab, form, formula_n)
            else:
                formula = formula_table3_bits(vocab, form, formula_n)
            rows.append(
                TableRow(
                    label=f"{vocab}/{form}",
                    columns=(
                        ("vocabulary", vocab),
                        ("form", form),
                        ("measured_bits", measured),
                        ("formula_bits", formula),
                    ),
                )
            )
    return rows


def xn1_size_rows(n: int, n_param: int = 16, k_param: int = 16) -> list[TableRow]:
    """Size table for x^n - 1 across vocabularies and forms.

    The formula column needs n >= 3 (the factored asymptotic involves
    log log n).
    """
    if n < 3:
        raise DomainError(f"the x^n-1 size table needs n >= 3, got {n}")
    return _size_rows(c_poly(n), n, 2, n_param, k_param)


def two_binomial_size_rows(p: int, q: int, n_param: int = 16, k_param: int = 16) -> list[TableRow]:
    """Size table for (x^p - 1)(x^q - 1), p and q distinct primes; the formula
    column is keyed on n = p + q."""
    if not is_prime(p) or not is_prime(q):
        raise DomainError(f"p and q must be prime, got {p} and {q}")
    if p == q:
        raise DomainError("p and q must be distinct")
    f = c_poly(p) * c_poly(q)
    return _size_rows(f, p + q, 3, n_param, k_param)
