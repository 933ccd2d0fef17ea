"""Shift/derivation operators, Stirling sums, and the factorial identity.

The literal lexicographic composition enumerations here are the oracles for
the prefix-sum evaluations used by the package (identical values, very
different shapes).
"""

from fractions import Fraction

import pytest

from fpslab import errors
from fpslab.alphaexpr import AlphaExpr
from fpslab.binomial import (
    check_alpha, continuation_from_series, family_from_series,
)
from fpslab.opcalc import (
    an_from_stirling_sum, check_combinatorial_reversion, check_commutator,
    check_operator_factorial_family, check_ordered_products,
    check_shift_factorial_identity, check_stirling_sums,
    combinatorial_reverted_preimage, derivation_apply, invert_shift_power,
    nu_from_stirling_sum, preimage_poly_from_operator, shift_apply,
    stirling_first,
)
from fpslab.rings import Poly
from fpslab.series import (
    Series, damped_exponential, exp_minus_one, forward_delta,
)

from conftest import random_normalized, seeded


def nonneg_compositions(total: int, parts: int):
    """Ordered tuples of nonnegative integers with the given sum, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(0, total + 1):
        for rest in nonneg_compositions(total - first, parts - 1):
            yield (first,) + rest


def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def nu_literal_multinomial(n: int) -> Poly:
    """(3.6)-shaped literal enumeration over compositions."""
    alpha = Poly.variable()
    one_minus = Poly((1, -1))
    total = Poly()
    for k in range(1, n + 1):
        inner = Poly()
        for comp in nonneg_compositions(n - 1, k):
            multinom = Fraction(factorial(n - 1))
            for m in comp:
                multinom /= factorial(m)
            chain = Fraction(1)
            prefix = 0
            for j in range(k - 1):
                prefix += comp[j]
                chain *= n - prefix
            inner = inner + (one_minus ** comp[-1]) * (multinom * chain)
        total = total + stirling_first(n, k) * inner
    return alpha * total * Fraction((-1) ** (n - 1), factorial(n - 1))


def nu_literal_ratio(n: int) -> Poly:
    """(3.7)-shaped literal enumeration over compositions with k+1 parts."""
    alpha = Poly.variable()
    total = Poly()
    for k in range(1, n + 1):
        inner = Poly()
        for comp in nonneg_compositions(n - 1, k + 1):
            chain = Fraction(1)
            prefix = 0
            for j in range(k):
                chain *= Fraction(n - prefix, comp[j] + 1)
                prefix += comp[j]
            m_last = comp[-1]
            binom_poly = Poly.const(1)
            for i in range(m_last):
                binom_poly = binom_poly * (Poly((m_last - i, -1)) / (i + 1))
            inner = inner + binom_poly * chain
        total = total + stirling_first(n, k) * inner
    return alpha * total * Fraction((-1) ** (n - 1), n)


def reverted_preimage_literal(c: Series, order: int) -> Series:
    """Literal enumeration of the displayed reverted-preimage sum, including
    the final chain factor (which is identically 1)."""
    out = {1: Fraction(1)}
    for n in range(2, order + 1):
        total = Fraction(0)
        for k in range(1, n + 1):
            for comp in nonneg_compositions(n - 1, k):
                prod = Fraction(1)
                prefix = 0
                for m in comp:
                    prod *= c.coeff(1 + m)
                for j in range(k):
                    prefix += comp[j]
                    prod *= n - prefix
                total += stirling_first(n, k) * prod
        out[n] = total / factorial(n)
    return Series.from_terms(out, order)


# ------------------------------------------------------------------ operators


def test_shift_of_constant():
    assert shift_apply(Series.x(6), Poly.const(1)) == Poly.variable()


def test_commutator_identity_various_f():
    rng = seeded(71)
    for f in (exp_minus_one(12), Series.from_terms({1: 1, 2: 1}, 12),
              random_normalized(rng, 12)):
        assert check_commutator(f, 9).passed


def test_shift_power_against_family():
    f = exp_minus_one(12)
    fam = family_from_series(f, 6)
    q = Poly.const(1)
    for n in range(1, 7):
        q = shift_apply(f, q)
        assert q == fam.polynomial(n)


def test_operator_power_factorial_on_basis():
    # A_f^n D_f^n acts as the falling factorial of A_f D_f
    rng = seeded(73)
    f = random_normalized(rng, 12)

    def a_then_d(q, times):
        for _ in range(times):
            q = derivation_apply(f, q)
        for _ in range(times):
            q = shift_apply(f, q)
        return q

    alpha = Poly.variable()
    for n in (1, 2, 3):
        for m in range(0, 6):
            q = Poly.monomial(m)
            lhs = a_then_d(q, n)
            rhs = q
            for j in range(n):
                rhs = shift_apply(f, derivation_apply(f, rhs)) - j * rhs
            assert lhs == rhs


def test_invert_shift_power():
    f = exp_minus_one(12)
    q = Poly((Fraction(1, 3), 2, 0, 1))
    img = q
    for _ in range(2):
        img = shift_apply(f, img)
    assert invert_shift_power(f, 2, img) == q
    with pytest.raises(errors.DegreeMismatch):
        invert_shift_power(f, 4, Poly((1, 1)))


# ----------------------------------------------------- preimage family formula


def test_preimage_polynomials_from_operator():
    f = damped_exponential(12)
    assert preimage_poly_from_operator(f, Poly.monomial(2), 2) == Poly((0, -2, 1))
    rep = check_operator_factorial_family(f, 5)
    assert rep.passed, rep.failures()
    rep = check_operator_factorial_family(exp_minus_one(12), 5)
    assert rep.passed, rep.failures()
    with pytest.raises(errors.NotMonic):
        preimage_poly_from_operator(f, Poly((0, 0, 2)), 2)
    with pytest.raises(errors.DegreeMismatch):
        preimage_poly_from_operator(f, Poly.monomial(3), 2)


def test_ordered_products_grid():
    for f in (exp_minus_one(10), Series.from_terms({1: 1, 2: 1}, 10),
              damped_exponential(10)):
        rep = check_ordered_products(f, 5)
        assert rep.passed, rep.failures()


# -------------------------------------------------------------- stirling sums


def test_stirling_values():
    assert stirling_first(3, 2) == -3
    assert stirling_first(4, 1) == -6
    for n in range(0, 8):
        assert stirling_first(n, n) == 1
    # oracle: coefficients of the falling factorial by direct expansion
    alpha = Poly.variable()
    ff = Poly.const(1)
    for j in range(4):
        ff = ff * (alpha - j)
    assert [stirling_first(4, k) for k in range(5)] == list(ff.coeffs)
    with pytest.raises(errors.OutOfRange):
        stirling_first(3, 4)


def test_stirling_sum_polynomials_against_literal_enumeration():
    for n in range(1, 8):
        dp_m = nu_from_stirling_sum(n, "multinomial")
        dp_r = nu_from_stirling_sum(n, "ratio")
        assert dp_m == nu_literal_multinomial(n)
        assert dp_r == nu_literal_ratio(n)
        assert dp_m == dp_r


def test_an_values_and_consistency():
    assert an_from_stirling_sum(1) == 1
    assert an_from_stirling_sum(2) == -1
    assert an_from_stirling_sum(3) == Fraction(5, 4)
    rep = check_stirling_sums(9, 11)
    assert rep.passed, rep.failures()


# ------------------------------------------- combinatorial reverted preimage


def test_combinatorial_reversion_examples():
    assert combinatorial_reverted_preimage(Series.x(8), 8).same_to(Series.x(8))
    got = combinatorial_reverted_preimage(damped_exponential(10), 10)
    from fpslab.eigen import psi_series
    assert got.same_to(psi_series(10))


def test_combinatorial_reversion_random_and_literal():
    rng = seeded(77)
    c = random_normalized(rng, 10)
    assert check_combinatorial_reversion(c, 10).passed
    lit = reverted_preimage_literal(c, 7)
    assert combinatorial_reverted_preimage(c, 7).same_to(lit)


# ----------------------------------------------------- factorial operator law


def test_shift_factorial_identity_instances():
    assert check_shift_factorial_identity(1, Fraction(1, 2), 4, 8).passed
    assert check_shift_factorial_identity(2, Fraction(-1, 3), 3, 8).passed
    # stated degeneration at p = 0: exact case plus small-p samples
    assert check_shift_factorial_identity(0, Fraction(1, 2), 2, 6).passed
    for p in (Fraction(1, 10), Fraction(1, 100)):
        assert check_shift_factorial_identity(p, Fraction(1, 2), 2, 6).passed


def test_factorial_identity_rearranged_to_reflection():
    # product_{j=-n..n} (alpha + j p) * p_{-n} = p_{n+1} for the family,
    # and the reflection at integer index with the undeformed delta family
    p, a = Fraction(1), Fraction(1, 2)
    depth = 10
    order = depth + 2
    f = forward_delta(p, order) * (1 + forward_delta(-p, order) * a)
    cont = continuation_from_series(f, depth)
    alpha = Poly.variable()
    for n in (1, 2, 3):
        prod = Poly.const(1)
        for j in range(-n, n + 1):
            prod = prod * (alpha + j * p)
        lhs = AlphaExpr.from_alpha_poly(prod, depth) * cont.at_integer(-n)
        rhs = cont.at_integer(n + 1)
        assert check_alpha(f"rearranged[n={n}]", lhs, rhs).passed
    base = continuation_from_series(forward_delta(p, order), depth)
    for n in (1, 2, 3):
        lhs = (AlphaExpr.from_alpha_poly(
            family_from_series(forward_delta(p, order), n).polynomial(n), depth)
            * cont.at_integer(1 - n))
        rhs = (AlphaExpr.from_alpha_poly(
            family_from_series(f, n).polynomial(n), depth)
            * base.at_integer(1 - n))
        assert check_alpha(f"integer-reflection[n={n}]", lhs, rhs).passed


def test_fault_injection_in_factorial_identity():
    rep = check_shift_factorial_identity(1, Fraction(1, 2), 2, 5,
                                         perturb=(1, 3))
    assert not rep.passed
    assert any("n=1" in c.name and "degree 3" in c.detail
               for c in rep.failures())
