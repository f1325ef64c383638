import doctest
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclorep import factorrep as factorrep_module
from cyclorep.cyclotomic import c_poly, extract_cyclotomic_factors, phi_poly
from cyclorep.errors import DomainError, NotAPolynomialError, PolyParseError
from cyclorep.factorrep import (
    CAwareFactorization,
    PhiAwareFactorization,
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
from cyclorep.numtheory import divisor_count, divisors
from cyclorep.poly import SparsePoly, gcd, parse_poly

from oracles import random_cyclotomic_product, random_terms


def test_doctests():
    failures, _ = doctest.testmod(factorrep_module)
    assert failures == 0


def random_poly_nonzero(rng, max_deg=8, max_coeff=9, max_terms=5) -> SparsePoly:
    f = SparsePoly(random_terms(rng, max_deg, max_coeff, max_terms))
    while f.is_zero:
        f = SparsePoly(random_terms(rng, max_deg, max_coeff, max_terms))
    return f


# --- constructors and invariants ---


def test_plain_constructor_normalizes():
    rep = PlainFactorization(content=1, factors=[(2, parse_poly("2*x-2"))])
    # primitivized: content picks up 2^2, factor becomes x-1
    assert rep.content == 4
    assert rep.factors == ((2, parse_poly("x-1")),)


def test_plain_constructor_merges_and_sorts():
    rep = PlainFactorization(
        content=1,
        factors=[(1, parse_poly("x^2+1")), (1, parse_poly("x-1")), (2, parse_poly("x-1"))],
    )
    assert rep.factors == ((3, parse_poly("x-1")), (1, parse_poly("x^2+1")))


def test_plain_constructor_rejects():
    with pytest.raises(DomainError):
        PlainFactorization(content=0)
    with pytest.raises(DomainError):
        PlainFactorization(content=1, factors=[(0, parse_poly("x-1"))])
    with pytest.raises(DomainError):
        PlainFactorization(content=1, factors=[(1, SparsePoly.zero())])
    with pytest.raises(DomainError):
        PlainFactorization(content=1, factors=[(1, "x-1")])  # type: ignore[list-item]


def test_phi_aware_constructor():
    rep = PhiAwareFactorization(phi_factors=[(1, 6), (2, 3), (1, 3)])
    assert rep.phi_factors == ((3, 3, 2), (1, 6, 2))
    assert rep.content == 1 and rep.x_power == 0
    with pytest.raises(DomainError):
        PhiAwareFactorization(phi_factors=[(1, 6, 3)])  # wrong degree
    with pytest.raises(DomainError):
        PhiAwareFactorization(x_power=-1)
    with pytest.raises(DomainError):
        PhiAwareFactorization(phi_factors=[(-1, 6)])


def test_c_aware_constructor():
    rep = CAwareFactorization(c_factors=[(1, 6), (-1, 3), (1, 6)])
    assert [(m, k) for m, k, _ in rep.c_factors] == [(-1, 3), (2, 6)]
    fact = {k: kf for _, k, kf in rep.c_factors}
    assert fact[6] == ((2, 1), (3, 1))
    # net-zero entries vanish, including a literal zero multiplicity
    rep = CAwareFactorization(c_factors=[(1, 5), (-1, 5)])
    assert rep.c_factors == ()
    assert CAwareFactorization(c_factors=[(0, 5)]).c_factors == ()
    with pytest.raises(DomainError):
        CAwareFactorization(c_factors=[(1, 0)])


# --- square-free decomposition ---


def test_squarefree_goldens():
    rep = squarefree_decomposition(parse_poly("x^2+2*x+1"))
    assert rep.content == 1
    assert rep.factors == ((2, parse_poly("x+1")),)

    rep = squarefree_decomposition(parse_poly("-2*x^3+4*x^2-2*x"))
    assert rep.content == -2
    # equal degrees sort by ascending coefficient tuple: x-1 before x
    assert rep.factors == ((2, parse_poly("x-1")), (1, SparsePoly.x()))

    rep = squarefree_decomposition(SparsePoly.constant(12))
    assert rep.content == 12 and rep.factors == ()


def test_squarefree_properties():
    rng = random.Random(21)
    for _ in range(150):
        f = random_poly_nonzero(rng)
        rep = squarefree_decomposition(f)
        assert expand(rep) == f
        blocks = [b for _, b in rep.factors]
        mults = [m for m, _ in rep.factors]
        assert len(set(mults)) == len(mults)  # one block per multiplicity
        for b in blocks:
            assert gcd(b, b.derivative()).degree == 0, (f, b)  # square-free
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                assert gcd(blocks[i], blocks[j]).degree == 0  # pairwise coprime


def test_squarefree_zero_rejected():
    with pytest.raises(DomainError):
        squarefree_decomposition(SparsePoly.zero())


# --- full factorization ---


def test_factor_full_golden():
    rep = factor_full(parse_poly("x^8+x^5+x^3+1"))
    assert [tuple(p) for p in rep.phi_factors] == [(2, 2, 1), (1, 6, 2), (1, 10, 4)]
    assert rep.content == 1 and rep.x_power == 0 and rep.other_factors == ()


def test_factor_full_x105():
    rep = factor_full(c_poly(105))
    assert [(m, k) for m, k, _ in rep.phi_factors] == [
        (1, 1), (1, 3), (1, 5), (1, 7), (1, 15), (1, 21), (1, 35), (1, 105),
    ]
    assert format_factorization(rep) == (
        "Phi_1 * Phi_3 * Phi_5 * Phi_7 * Phi_15 * Phi_21 * Phi_35 * Phi_105"
    )


def test_factor_full_mixed():
    f = SparsePoly.constant(-6) * c_poly(2).shift(1) * parse_poly("x^2-x-1") ** 2
    rep = factor_full(f)
    assert rep.content == -6
    assert rep.x_power == 1
    assert [(m, k) for m, k, _ in rep.phi_factors] == [(1, 1), (1, 2)]
    assert rep.other_factors == ((2, parse_poly("x^2-x-1")),)
    assert expand(rep) == f


def test_factor_full_round_trip():
    rng = random.Random(31)
    for _ in range(80):
        parts = random_cyclotomic_product(rng, 24)
        f = random_poly_nonzero(rng, max_deg=4, max_coeff=5, max_terms=3)
        for k, m in parts:
            f = f * phi_poly(k) ** m
        rep = factor_full(f)
        assert expand(rep) == f
        for _, cof in rep.other_factors:
            assert extract_cyclotomic_factors(cof).decomposition.parts == ()
            assert gcd(cof, cof.derivative()).degree == 0


# --- vocabulary conversions ---


def test_c_aware_goldens():
    rep = to_c_aware(factor_full(parse_poly("x^8+x^5+x^3+1")))
    assert [(m, k) for m, k, _ in rep.c_factors] == [(-1, 3), (-1, 5), (1, 6), (1, 10)]
    assert format_factorization(rep) == "C_3^-1 * C_5^-1 * C_6 * C_10"

    rep = to_c_aware(factor_full(parse_poly("x^3+1")))
    assert [(m, k) for m, k, _ in rep.c_factors] == [(-1, 3), (1, 6)]

    rep = to_c_aware(factor_full(c_poly(105)))
    assert [(m, k) for m, k, _ in rep.c_factors] == [(1, 105)]
    assert format_factorization(rep) == "C_105"


def test_phi_c_round_trip():
    rng = random.Random(41)
    for _ in range(80):
        parts = random_cyclotomic_product(rng, 24)
        f = SparsePoly.one()
        for k, m in parts:
            f = f * phi_poly(k) ** m
        phi_rep = factor_full(f)
        c_rep = to_c_aware(phi_rep)
        assert expand(c_rep) == f
        back = to_phi_aware(c_rep)
        assert back == phi_rep


def test_to_phi_aware_rejects_non_polynomial():
    rep = CAwareFactorization(c_factors=[(-1, 3)])
    with pytest.raises(NotAPolynomialError) as exc:
        to_phi_aware(rep)
    assert exc.value.divisor == 1
    with pytest.raises(NotAPolynomialError):
        expand(rep)


def test_expand_c_with_negative_net():
    rep = parse_factorization("C_6 * C_3^-1")
    assert expand(rep) == parse_poly("x^3+1")
    rep = parse_factorization("C_30 * C_15^-1")
    assert expand(rep) == parse_poly("x^15+1")
    assert expand(rep) == expand(to_phi_aware(rep))
    rep = parse_factorization("2 * x^3 * C_10 * C_5^-1 * C_6 * C_3^-1 * C_2^-1 * C_1")
    assert expand(rep) == expand(to_phi_aware(rep))


def test_to_plain():
    phi_rep = factor_full(parse_poly("x^8+x^5+x^3+1"))
    plain = to_plain(phi_rep)
    assert expand(plain) == parse_poly("x^8+x^5+x^3+1")
    assert format_factorization(plain) == "(x+1)^2 * (x^2-x+1) * (x^4-x^3+x^2-x+1)"
    with pytest.raises(DomainError):
        to_plain(plain)  # type: ignore[arg-type]


# --- queries ---


def test_degree_and_counts():
    f = parse_poly("x^8+x^5+x^3+1")
    phi_rep = factor_full(f)
    c_rep = to_c_aware(phi_rep)
    plain = to_plain(phi_rep)
    from cyclorep.factorrep import degree

    assert degree(phi_rep) == degree(c_rep) == degree(plain) == 8
    assert num_irreducible_factors(phi_rep) == 3
    assert num_irreducible_factors(plain) == 3
    assert num_irreducible_factors(c_rep) == 3


def test_num_irreducible_is_divisor_count():
    for n in (1, 2, 6, 12, 105, 210):
        assert num_irreducible_factors(factor_full(c_poly(n))) == divisor_count(n)


def test_multiplicity_of_phi():
    f = parse_poly("x^8+x^5+x^3+1")
    phi_rep = factor_full(f)
    c_rep = to_c_aware(phi_rep)
    plain = to_plain(phi_rep)
    for k, want in ((1, 0), (2, 2), (6, 1), (10, 1), (7, 0)):
        assert multiplicity_of_phi(phi_rep, k) == want, k
        assert multiplicity_of_phi(c_rep, k) == want, k
        assert multiplicity_of_phi(plain, k) == want, k


# --- text round trips ---


def test_format_goldens():
    assert format_factorization(PlainFactorization(content=1)) == "1"
    assert format_factorization(PlainFactorization(content=-3)) == "-3"
    rep = PhiAwareFactorization(content=2, x_power=2, phi_factors=[(1, 1), (1, 2)])
    assert format_factorization(rep) == "2 * x^2 * Phi_1 * Phi_2"
    rep = PhiAwareFactorization(
        phi_factors=[(1, 2)], other_factors=[(1, parse_poly("x-2"))], x_power=1
    )
    assert format_factorization(rep) == "x * Phi_2 * (x-2)"


def test_parse_goldens():
    rep = parse_factorization("C_6 * C_3^-1")
    assert isinstance(rep, CAwareFactorization)
    rep = parse_factorization("2 * x^2 * Phi_1 * Phi_2")
    assert isinstance(rep, PhiAwareFactorization)
    assert rep.content == 2 and rep.x_power == 2
    rep = parse_factorization("x^2 * 3")
    assert isinstance(rep, PlainFactorization)
    assert format_factorization(rep) == "3 * x^2"
    rep = parse_factorization("(x-1)^2 * (x^4+x^3+x^2+x+1)")
    assert rep.factors[0] == (2, parse_poly("x-1"))


@pytest.mark.parametrize(
    "text",
    [
        "Phi_3 * C_6",          # mixed vocabularies
        "Phi_0",                # bad index
        "Phi_3^0",              # zero multiplicity
        "Phi_3^-1",             # negative multiplicity on Phi
        "(x-1",                 # unbalanced
        "x-1)",                 # unbalanced
        "C_",                   # missing index
        "x^^2",                 # mangled power
        "",                     # empty
        "Phi_3 * * C_6",        # empty item
        "(x-1)^-2",             # negative on polynomial factor
        "foo",                  # unknown item
    ],
)
def test_parse_rejects(text):
    with pytest.raises(PolyParseError):
        parse_factorization(text)


def test_text_round_trip():
    rng = random.Random(51)
    for _ in range(60):
        parts = random_cyclotomic_product(rng, 20)
        f = random_poly_nonzero(rng, max_deg=3, max_coeff=4, max_terms=3)
        for k, m in parts:
            f = f * phi_poly(k) ** m
        for rep in (
            factor_full(f),
            to_c_aware(factor_full(f)),
            to_plain(factor_full(f)),
        ):
            text = format_factorization(rep)
            assert parse_factorization(text) == rep, text
