import doctest
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclorep import poly as poly_module
from cyclorep.errors import DomainError, InexactDivisionError, PolyParseError
from cyclorep.poly import (
    DensePoly,
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

from oracles import dense_mul, random_terms


def test_doctests():
    failures, _ = doctest.testmod(poly_module)
    assert failures == 0


terms_strategy = st.dictionaries(
    st.integers(min_value=0, max_value=40),
    st.integers(min_value=-50, max_value=50).filter(bool),
    max_size=8,
)


def sp(d: dict) -> SparsePoly:
    return SparsePoly(d.items())


# --- construction and canonical form ---


def test_normalization():
    f = SparsePoly([(2, 1), (2, -1), (0, 3)])
    assert f.terms == ((0, 3),)
    assert SparsePoly([(5, 0)]).is_zero
    assert SparsePoly().is_zero
    with pytest.raises(DomainError):
        SparsePoly([(-1, 2)])


def test_zero_conventions():
    # the zero polynomial has degree 0 by convention, empty term list
    z = SparsePoly.zero()
    assert z.degree == 0 and z.leading_coefficient == 0 and z.term_count == 0
    assert not z
    assert DensePoly([]).is_zero and DensePoly([0, 0]).is_zero
    assert to_dense(z).coefficients == (0,)


def test_dense_sparse_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        f = SparsePoly(random_terms(rng, 30, 99, 6))
        assert to_sparse(to_dense(f)) == f
        d = to_dense(f)
        assert to_dense(to_sparse(d)) == d


# --- arithmetic against the dense oracle ---


@given(terms_strategy, terms_strategy)
def test_mul_matches_oracle(a, b):
    f, g = sp(a), sp(b)
    fd = to_dense(f).coefficients
    gd = to_dense(g).coefficients
    assert to_dense(f * g).coefficients == tuple(dense_mul(list(fd), list(gd)))


@given(terms_strategy, terms_strategy, terms_strategy)
def test_ring_identities(a, b, c):
    f, g, h = sp(a), sp(b), sp(c)
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert f - g == f + (-g)
    assert f * (g * h) == (f * g) * h


@given(terms_strategy, st.integers(min_value=0, max_value=5))
def test_pow(a, e):
    f = sp(a)
    expected = SparsePoly.one()
    for _ in range(e):
        expected = expected * f
    assert f**e == expected
    with pytest.raises(DomainError):
        f**-1


@given(terms_strategy, st.integers(min_value=0, max_value=9))
def test_shift_is_mul_by_power_of_x(a, d):
    f = sp(a)
    assert f.shift(d) == f * SparsePoly.x() ** d


@given(terms_strategy)
def test_even_odd_recomposition(a):
    # f(x) = e(x^2) + x * o(x^2)
    f = sp(a)
    e, o = f.even_part(), f.odd_part()
    e2 = SparsePoly((2 * k, c) for k, c in e.terms)
    o2 = SparsePoly((2 * k + 1, c) for k, c in o.terms)
    assert e2 + o2 == f


@given(terms_strategy)
def test_reverse_and_negate_x(a):
    f = sp(a)
    assert f.negate_x().negate_x() == f
    assert f.negate_x().eval_at(3) == f.eval_at(-3)
    if not f.is_zero and f.coefficient(0) != 0:
        assert f.reverse().reverse() == f
    if not f.is_zero:
        # reverse is x^deg * f(1/x): check by evaluation at 3 over rationals
        from fractions import Fraction

        d = f.degree
        lhs = f.reverse().eval_at(3)
        rhs = Fraction(3) ** d * sum(Fraction(c, 3**e) for e, c in f.terms)
        assert lhs == rhs


def test_reverse_golden():
    f = parse_poly("2*x^3+x-5")
    assert format_poly(f.reverse()) == "-5*x^3+x^2+2"


@given(terms_strategy)
def test_derivative_linearity_and_product_rule(a):
    f = sp(a)
    g = parse_poly("x^2-3*x+1")
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
    assert (f + g).derivative() == f.derivative() + g.derivative()


@given(terms_strategy)
def test_content_primitive(a):
    f = sp(a)
    if f.is_zero:
        assert f.content() == 0
        return
    c = f.content()
    p = f.primitive_part()
    assert c > 0
    assert p.content() == 1
    assert p.leading_coefficient > 0
    sign = 1 if f.leading_coefficient > 0 else -1
    assert p * SparsePoly.constant(sign * c) == f


@given(terms_strategy, st.integers(min_value=-4, max_value=4))
def test_eval(a, x0):
    f = sp(a)
    assert f.eval_at(x0) == sum(c * x0**e for e, c in f.terms)


# --- exact division ---


@given(terms_strategy, terms_strategy)
def test_div_exact_round_trip(a, b):
    f, g = sp(a), sp(b)
    if g.is_zero:
        with pytest.raises(DomainError):
            div_exact(f, g)
        return
    assert div_exact(f * g, g) == f


def test_div_exact_inexact():
    with pytest.raises(InexactDivisionError) as exc:
        div_exact(parse_poly("x^2+1"), parse_poly("x-1"))
    assert exc.value.remainder == SparsePoly.constant(2)
    with pytest.raises(InexactDivisionError):
        div_exact(parse_poly("x"), parse_poly("2*x"))


# --- gcd ---


def test_gcd_golden():
    f = parse_poly("x^2-1")
    g = parse_poly("x^2-2*x+1")
    assert gcd(f, g) == parse_poly("x-1")
    assert gcd(f, SparsePoly.zero()) == f
    assert gcd(SparsePoly.zero(), g) == g  # primitive part of g is itself
    with pytest.raises(DomainError):
        gcd(SparsePoly.zero(), SparsePoly.zero())


def test_gcd_coprime():
    from cyclorep.cyclotomic import phi_poly

    assert gcd(phi_poly(3), phi_poly(5)) == SparsePoly.one()


@given(terms_strategy, terms_strategy)
@settings(deadline=None)
def test_gcd_of_multiple(a, b):
    f, g = sp(a), sp(b)
    prod = f * g
    if prod.is_zero:
        return
    # gcd(h, h*g) is the primitive part of h, up to sign conventions
    assert gcd(prod, prod * parse_poly("x+2")) == prod.primitive_part()


def test_gcd_sign_convention():
    g = gcd(parse_poly("-2*x^2+2"), parse_poly("-6*x-6"))
    assert g == parse_poly("x+1")
    assert g.leading_coefficient > 0 and g.content() == 1


# --- norms ---


@given(terms_strategy)
def test_norms(a):
    f = sp(a)
    n = norms(f)
    cs = [c for _, c in f.terms]
    assert n.height == (max(map(abs, cs)) if cs else 0) == height(f)
    assert n.one_norm == sum(map(abs, cs)) == one_norm(f)
    assert n.two_norm_squared == sum(c * c for c in cs) == two_norm_squared(f)
    assert n.term_count == len(cs) == term_count(f)
    assert n.height <= n.one_norm <= n.term_count * max(n.height, 1) or f.is_zero
    assert n.two_norm_squared <= n.one_norm**2


# --- parsing and formatting ---


@given(terms_strategy)
def test_parse_format_round_trip(a):
    f = sp(a)
    assert parse_poly(format_poly(f)) == f


def test_format_goldens():
    assert format_poly(SparsePoly.zero()) == "0"
    assert format_poly(SparsePoly.constant(-1)) == "-1"
    assert format_poly(SparsePoly.x()) == "x"
    assert format_poly(parse_poly("-x^2 + 3")) == "-x^2+3"
    assert format_poly(parse_poly("7*x^3 - x + 1")) == "7*x^3-x+1"
    assert format_poly(parse_poly("0*x^5 + 0")) == "0"


@pytest.mark.parametrize(
    "text",
    ["", "  ", "x^^2", "2x", "x^", "^3", "x**2", "+", "x+", "3*", "x^-2", "y", "(x-1)"],
)
def test_parse_rejects(text):
    with pytest.raises(PolyParseError):
        parse_poly(text)


def test_parse_error_position():
    with pytest.raises(PolyParseError) as exc:
        parse_poly("x^2 & 1")
    assert exc.value.position == 4
    assert "position 4" in str(exc.value)


def test_parse_whitespace_and_merging():
    assert parse_poly(" x ^ 2 - 1 ") == parse_poly("x^2-1")
    assert parse_poly("2*x + 3*x - 5*x").terms == ()
    assert parse_poly("x^3+x^3") == parse_poly("2*x^3")


# --- dense mirror API ---


def test_dense_ops_agree():
    rng = random.Random(11)
    for _ in range(100):
        f = SparsePoly(random_terms(rng, 20, 30, 5))
        g = SparsePoly(random_terms(rng, 20, 30, 5))
        fd, gd = to_dense(f), to_dense(g)
        assert to_sparse(fd * gd) == f * g
        assert to_sparse(fd + gd) == f + g
        assert to_sparse(fd - gd) == f - g
        assert to_sparse(-fd) == -f
        assert fd.degree == f.degree
        assert fd.leading_coefficient == f.leading_coefficient
        assert to_sparse(fd.derivative()) == f.derivative()
        assert to_sparse(fd.negate_x()) == f.negate_x()
        assert fd.eval_at(2) == f.eval_at(2)
        assert to_sparse(fd.graeffe()) == f.graeffe()
