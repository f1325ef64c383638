"""Exact integer-polynomial arithmetic with cyclotomic-aware factored
representations and a bit-exact codec for comparing their sizes."""

from .codec import (
    EncodedBlob,
    SizeReport,
    ceil_log2,
    decode,
    encode,
    formula_dense_bits,
    formula_factorization_overhead_bits,
    formula_phi_factored_table_bits,
    formula_phi_overhead_bits,
    formula_size_bits,
    formula_sparse_bits,
    formula_table2_bits,
    formula_table3_bits,
    measured_bits,
    size_report,
)
from .cyclotomic import (
    CyclotomicDecomposition,
    CyclotomicVerdict,
    ExtractResult,
    HeightRecord,
    c_poly,
    cyclotomic_decompose,
    extract_cyclotomic_factors,
    height_records,
    is_cyclotomic_quick,
    phi_poly,
    substitution_split,
)
from .errors import (
    CapacityError,
    CycloRepError,
    DomainError,
    InconsistencyError,
    InexactDivisionError,
    InvariantViolationError,
    MalformedBlobError,
    NotAPolynomialError,
    NotPureCyclotomicError,
    PolyParseError,
)
from .factorrep import (
    CAwareFactorization,
    CFactor,
    PhiAwareFactorization,
    PhiFactor,
    PlainFactorization,
    expand,
    factor_full,
    format_factorization,
    multiplicity_of_phi,
    num_irreducible_factors,
    parse_factorization,
    squarefree_decomposition,
    to_c_aware,
    to_phi_aware,
    to_plain,
)
from .numtheory import (
    divisor_count,
    divisors,
    factorize,
    is_prime,
    mobius,
    recover_pq,
    totient,
)
from .poly import (
    DensePoly,
    Norms,
    SparsePoly,
    div_exact,
    format_poly,
    gcd,
    height,
    norms,
    one_norm,
    parse_poly,
    term_count,
    to_dense,
    to_sparse,
    two_norm_squared,
)
from .tables import (
    TableRow,
    height_record_rows,
    two_binomial_size_rows,
    xn1_size_rows,
)

__version__ = "0.1.0"

__all__ = [
    "CAwareFactorization",
    "CFactor",
    "CapacityError",
    "CycloRepError",
    "CyclotomicDecomposition",
    "CyclotomicVerdict",
    "DensePoly",
    "DomainError",
    "EncodedBlob",
    "ExtractResult",
    "HeightRecord",
    "InconsistencyError",
    "InexactDivisionError",
    "InvariantViolationError",
    "MalformedBlobError",
    "Norms",
    "NotAPolynomialError",
    "NotPureCyclotomicError",
    "PhiAwareFactorization",
    "PhiFactor",
    "PlainFactorization",
    "PolyParseError",
    "SizeReport",
    "SparsePoly",
    "TableRow",
    "c_poly",
    "ceil_log2",
    "cyclotomic_decompose",
    "decode",
    "div_exact",
    "divisor_count",
    "divisors",
    "encode",
    "expand",
    "extract_cyclotomic_factors",
    "factor_full",
    "factorize",
    "format_factorization",
    "format_poly",
    "formula_dense_bits",
    "formula_factorization_overhead_bits",
    "formula_phi_factored_table_bits",
    "formula_phi_overhead_bits",
    "formula_size_bits",
    "formula_sparse_bits",
    "formula_table2_bits",
    "formula_table3_bits",
    "gcd",
    "height",
    "height_record_rows",
    "height_records",
    "is_cyclotomic_quick",
    "is_prime",
    "measured_bits",
    "mobius",
    "multiplicity_of_phi",
    "norms",
    "num_irreducible_factors",
    "one_norm",
    "parse_factorization",
    "parse_poly",
    "phi_poly",
    "recover_pq",
    "size_report",
    "squarefree_decomposition",
    "substitution_split",
    "term_count",
    "to_c_aware",
    "to_dense",
    "to_phi_aware",
    "to_plain",
    "to_sparse",
    "totient",
    "two_binomial_size_rows",
    "two_norm_squared",
    "xn1_size_rows",
]
