"""Series-core arithmetic, transforms, and their oracle checks."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fpslab import errors
from fpslab.rings import POLY, RAT, Poly
from fpslab.series import (
    Series, compose, damped_exponential, divide, exp_minus_one, exponential,
    inverse_dlog, inverse_dlog_preimage, log_one_plus, logarithm, power,
    power_conjugate, reversion, reverted_inverse_dlog,
)

from conftest import random_normalized, seeded


def binomial_oracle(exponent: Fraction, inner_coeff: Fraction, inner_exp: int,
                    order: int) -> Series:
    """(1 + c*x^m)^e expanded term by term with generalized binomials."""
    terms = {}
    k = 0
    acc = Fraction(1)
    while k * inner_exp <= order:
        terms[k * inner_exp] = acc * inner_coeff ** k
        acc = acc * (exponent - k) / (k + 1)
        k += 1
    return Series.from_terms(terms, order)


# --------------------------------------------------------------- arithmetic


def test_add_identity_and_cancellation():
    x = Series.x(6)
    x2 = Series.from_terms({2: 1}, 6)
    assert (x + x2).coeff_list(1, 2) == [1, 1]
    f = Series.from_terms({1: 1, 2: -1}, 6)
    assert (f + x2).same_to(x)
    assert (f + Series.zero(6)).same_to(f)


def test_mul_examples():
    x = Series.x(8)
    f = Series.from_terms({1: 1, 2: 1}, 8)
    assert (f * x).coeff_list(2, 3) == [1, 1]
    onep = Series.from_terms({0: 1, 1: 1}, 8)
    onem = Series.from_terms({0: 1, 1: -1}, 8)
    assert (onep * onem).same_to(Series.from_terms({0: 1, 2: -1}, 8))


def test_mul_order_bookkeeping():
    a = Series.from_terms({1: 1}, 5)       # order 5, valuation 1
    b = Series.from_terms({2: 1}, 7)       # order 7, valuation 2
    assert (a * b).order == min(5 + 2, 7 + 1)


def test_div_geometric_and_multiply_back():
    x = Series.x(10)
    f = Series.from_terms({1: 1, 2: 1}, 10)
    g = x / f
    assert g.coeff_list(0, 3) == [1, -1, 1, -1]
    q = Series.from_terms({1: 1, 2: 1}, 9) / Series.from_terms({0: 1, 1: 2}, 9)
    # oracle: multiply back
    assert (q * Series.from_terms({0: 1, 1: 2}, 9)).same_to(
        Series.from_terms({1: 1, 2: 1}, 9))
    assert q.coeff_list(1, 3) == [1, -1, 2]


def test_div_laurent_shift_and_errors():
    x2 = Series.from_terms({2: 1}, 8)
    x = Series.x(8)
    assert (x2 / x).same_to(Series.x(6))
    with pytest.raises(errors.DivByZero):
        divide(x, Series.zero(8))
    s_poly_lead = Series.from_terms({0: Poly.variable()}, 4, POLY)
    with pytest.raises(errors.NonInvertibleLead):
        divide(Series.one(4, POLY), s_poly_lead)


def test_inverse_round_trip():
    f = Series.from_terms({0: 1, 1: -1}, 12)
    assert ((1 / f) * f).same_to(Series.one(10))


def test_compose_examples():
    f = Series.from_terms({1: 1, 2: -2, 5: 3}, 9)
    assert compose(f, Series.x(9)).same_to(f)
    sq = Series.from_terms({2: 1}, 9)
    inner = Series.from_terms({1: 1, 2: 1}, 9)
    assert compose(sq, inner).coeff_list(2, 4) == [1, 2, 1]
    # exp(log(1+x)) - 1 == x
    expm1 = exp_minus_one(9)
    assert (compose(expm1, log_one_plus(9))).same_to(Series.x(9))
    with pytest.raises(errors.InnerConstantTerm):
        compose(f, Series.one(9))


def test_compose_with_zero_inner():
    f = Series.from_terms({0: 7, 1: 1}, 5)
    out = compose(f, Series.zero(5))
    assert out.coeff(0) == 7 and out.same_to(Series.from_terms({0: 7}, 5))


def test_reversion_examples():
    assert reversion(Series.x(6)).same_to(Series.x(6))
    f = Series.from_terms({1: 1, 2: 1}, 8)
    g = reversion(f)
    assert g.coeff_list(1, 4) == [1, -1, 2, -5]
    assert compose(f, g).same_to(Series.x(8))
    # known pair: rev(e^x - 1) = log(1+x)
    assert reversion(exp_minus_one(10)).same_to(log_one_plus(10))
    with pytest.raises(errors.NotInvertible):
        reversion(Series.from_terms({1: 2}, 5))
    with pytest.raises(errors.NotInvertible):
        reversion(Series.from_terms({2: 1}, 5))


def test_exp_log_pow():
    onep = Series.from_terms({0: 1, 1: 1}, 10)
    assert exponential(log_one_plus(10)).same_to(onep)
    s = Poly.variable()
    ps = power(onep, s)
    assert ps.coeff(0) == Poly.const(1)
    assert ps.coeff(1) == s
    assert ps.coeff(2) == (s * s - s) / 2
    with pytest.raises(errors.BadConstantTerm):
        logarithm(Series.from_terms({0: 2, 1: 1}, 5))
    with pytest.raises(errors.BadConstantTerm):
        exponential(Series.from_terms({0: 1}, 5))


def test_pow_against_binomial_oracle():
    # (1 - t^4)^(-1/4) = 1 + t^4/4 + ... frozen from the binomial oracle
    u = Series.from_terms({0: 1, 4: -1}, 20)
    got = power(u, Fraction(-1, 4))
    want = binomial_oracle(Fraction(-1, 4), Fraction(-1), 4, 20)
    assert got.same_to(want)
    assert got.coeff(4) == Fraction(1, 4)
    # and a second instance with positive inner coefficient
    v = Series.from_terms({0: 1, 2: Fraction(1, 3)}, 15)
    assert power(v, Fraction(2, 5)).same_to(
        binomial_oracle(Fraction(2, 5), Fraction(1, 3), 2, 15))


def test_calculus():
    f = Series.from_terms({2: 1}, 6)
    assert f.derivative().same_to(Series.from_terms({1: 2}, 5))
    assert Series.one(6).integral().same_to(Series.x(7))
    cubed = Series.from_terms({3: 1}, 6)
    assert cubed.x_d_dx(2).same_to(Series.from_terms({3: 9}, 6))
    with pytest.raises(errors.NonIntegrableTerm):
        Series.from_terms({-1: 1}, 4).integral()


# ---------------------------------------------------------------- transforms


def test_inverse_dlog_first_order_perturbation():
    # f = x + a x^(n+1) maps to x - n a x^(n+1) + higher terms
    a = Fraction(3, 7)
    for n in (1, 2, 5):
        f = Series.from_terms({1: 1, n + 1: a}, n + 1)
        assert inverse_dlog(f).coeff(n + 1) == -n * a


def test_inverse_dlog_known_pair():
    got = inverse_dlog(exp_minus_one(12))
    want = -(exp_minus_one(12, -1))
    assert got.same_to(want)
    with pytest.raises(errors.NotNormalized):
        inverse_dlog(Series.from_terms({1: 2}, 5))


def test_inverse_dlog_preserves_order_and_normalization():
    f = Series.from_terms({1: 1, 2: 2, 3: -1}, 9)
    t = inverse_dlog(f)
    assert t.order == 9 and t.is_normalized


def test_preimage_round_trips():
    rng = seeded(7)
    for _ in range(4):
        f = random_normalized(rng, 10)
        g = inverse_dlog_preimage(f)
        assert inverse_dlog(g).same_to(f)
        assert inverse_dlog_preimage(inverse_dlog(f)).same_to(f)
    assert inverse_dlog_preimage(Series.x(8)).same_to(Series.x(8))


def test_preimage_of_damped_exponential():
    g = inverse_dlog_preimage(damped_exponential(10))
    assert g.coeff_list(1, 3) == [1, 1, Fraction(3, 4)]
    # oracle: g/g' must reproduce the input
    assert divide(g, g.derivative()).same_to(damped_exponential(10))


def test_reverted_inverse_dlog_named_images():
    # log(1+x) maps to -log(1-x)
    img = reverted_inverse_dlog(log_one_plus(14))
    mlog = -logarithm(Series.from_terms({0: 1, 1: -1}, 14))
    assert img.same_to(mlog)
    # arcsin maps to arctan
    arcsin = power(Series.from_terms({0: 1, 2: -1}, 15), Fraction(-1, 2)).integral()
    arctan = (1 / Series.from_terms({0: 1, 2: 1}, 17)).integral()
    assert reverted_inverse_dlog(arcsin).same_to(arctan.truncated(16))
    assert reverted_inverse_dlog(Series.x(8)).same_to(Series.x(8))


def test_transforms_preserve_normalization():
    rng = seeded(11)
    for _ in range(4):
        f = random_normalized(rng, 9)
        assert inverse_dlog(f).is_normalized
        assert reversion(f).is_normalized
        assert inverse_dlog_preimage(f).is_normalized
        assert reverted_inverse_dlog(f).is_normalized


def test_integral_image_property():
    # the image of int f^inv(t)/t dt is int t/(f/f')(t) dt
    rng = seeded(23)
    for _ in range(4):
        f = random_normalized(rng, 10)
        lhs_integrand = divide(reversion(f), Series.x(10))
        lhs = reverted_inverse_dlog(lhs_integrand.integral())
        rhs = divide(Series.x(12), inverse_dlog(f)).integral()
        assert lhs.same_to(rhs)


def test_reversion_against_lagrange_residues():
    # (f/f')^inv coefficients from residues of (f'/f)^n, two stated forms
    rng = seeded(31)
    f = random_normalized(rng, 10)
    t = inverse_dlog(f)
    g = reversion(t)
    ratio = divide(f.derivative(), f)           # valuation -1
    for n in range(1, 9):
        res = (ratio ** n).coeff(-1)
        assert g.coeff(n) == Fraction(res, n)
    # second form: residues of ((f^inv)')^(1-n) / t^n
    finv = reversion(f)
    dinv = finv.derivative()
    for n in range(2, 9):
        body = power(dinv, Fraction(1 - n, 1))
        res = body.coeff(n - 1)                 # res of body / t^n at 0
        assert g.coeff(n) == Fraction(res, n)


def test_power_conjugate_examples():
    assert power_conjugate(Series.x(6), 3).same_to(Series.x(6))
    f = Series.from_terms({1: 1, 2: 1}, 6)
    got = power_conjugate(f, 2)
    want = Series.x(13) * binomial_oracle(Fraction(1, 2), Fraction(1), 2, 12)
    assert got.same_to(want, order=min(got.order, 12))


def test_power_conjugate_intertwines_transforms():
    # conjugation by x^n intertwines both transforms (checked at n=2, order 12)
    f = Series.from_terms({1: 1, 2: 1}, 12)
    n = 2
    conj = power_conjugate(f, n)
    tf = inverse_dlog(f)
    lhs_t = inverse_dlog(conj)
    rhs_t = Series.from_terms(
        {n * (tf.shift + i) + 1 - n: c for i, c in enumerate(tf.coeffs)},
        n * tf.order + n - 1 + 1 - n, RAT)
    assert lhs_t.same_to(rhs_t)
    lhs_q = reversion(conj)
    rhs_q = power_conjugate(reversion(f), n)
    assert lhs_q.same_to(rhs_q)
    lhs_tq = inverse_dlog(reversion(conj))
    tq = inverse_dlog(reversion(f))
    rhs_tq = Series.from_terms(
        {n * (tq.shift + i) + 1 - n: c for i, c in enumerate(tq.coeffs)},
        n * tq.order + n - 1 + 1 - n, RAT)
    assert lhs_tq.same_to(rhs_tq)


def test_binomial_family_rescaled_image():
    # termwise: the reverted-transform image of int sum p_n(a) t^n/n! dt has
    # coefficients p_n(-n a)/n! in the integrand
    from fpslab.binomial import family_from_series
    rng = seeded(41)
    f = random_normalized(rng, 9)
    fam = family_from_series(f, 9)
    a = Fraction(2, 3)
    gen = exponential(reversion(f) * a)
    image = reverted_inverse_dlog(gen.integral().truncated(10))
    fact = 1
    for n in range(0, 9):
        if n:
            fact *= n
        coeff = image.coeff(n + 1) * (n + 1)
        assert coeff == fam.polynomial(n)(-n * a) / fact


# -------------------------------------------------------------- property tests


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def normalized_series(draw, order=8):
    tail = draw(st.lists(small_rationals, min_size=order - 1, max_size=order - 1))
    terms = {1: Fraction(1)}
    terms.update({i + 2: c for i, c in enumerate(tail)})
    return Series.from_terms(terms, order)


@settings(max_examples=40, deadline=None)
@given(normalized_series())
def test_reversion_involution(f):
    assert reversion(reversion(f)).same_to(f)


@settings(max_examples=40, deadline=None)
@given(normalized_series())
def test_dlog_round_trips(f):
    assert inverse_dlog(inverse_dlog_preimage(f)).same_to(f)
    assert inverse_dlog_preimage(inverse_dlog(f)).same_to(f)


@settings(max_examples=40, deadline=None)
@given(normalized_series())
def test_exp_log_round_trip(f):
    u = exponential(f)
    assert logarithm(u).same_to(f)


@settings(max_examples=30, deadline=None)
@given(normalized_series(order=7), normalized_series(order=7))
def test_mul_commutes_and_distributes(a, b):
    assert (a * b).same_to(b * a)
    assert ((a + b) * a).same_to(a * a + b * a)


def test_referential_transparency():
    f = Series.from_terms({1: 1, 2: Fraction(1, 3), 5: -2}, 9)
    assert inverse_dlog(f) == inverse_dlog(f)
    assert reversion(f) == reversion(f)


def test_with_coeff_fault_seam():
    f = Series.from_terms({1: 1, 3: 2}, 6)
    g = f.with_coeff(3, 5)
    assert g.coeff(3) == 5 and g.coeff(1) == 1 and g.order == 6
    assert f.coeff(3) == 2


def test_order_exhausted_guard():
    f = Series.from_terms({1: 1}, 4)
    with pytest.raises(errors.OrderExhausted):
        f.coeff(5)
    with pytest.raises(errors.OrderExhausted):
        f.same_to(Series.x(9), order=9)
