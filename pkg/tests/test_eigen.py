"""Rescaling-family, exponent-kernel, and elliptic-series checks."""

from fractions import Fraction

import pytest

from fpslab import errors
from fpslab.eigen import (
    check_elliptic_doubling, check_endpoint_identities, check_exp_transport,
    check_eigen_displays, check_phi_index_laws, check_phi_kernel_equation,
    eigen_reciprocal, eigen_series, elliptic_sine, lambert_w, phi_endpoints,
    phi_series, phi_two_closed_form, phi_four_closed_form, phi_zero_series,
    psi_series,
)
from fpslab.series import (
    Series, compose, divide, exp_minus_one, exponential, log_one_plus,
    logarithm,
)


def compositions(total: int, parts: int):
    """Ordered tuples of positive integers with the given sum (lexicographic)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def phi_coefficient_oracle(p: Fraction, order: int) -> list[Fraction]:
    """Literal composition-sum recurrence for the kernel coefficients:
    (n - (-p)^(n-1)) A_n = sum_{k=2}^n ((-p)^(n-k) - n^k)/k! * sum_comps prod A."""
    a = [Fraction(0), Fraction(1)]
    fact = [1, 1]
    for n in range(2, order + 1):
        fact.append(fact[-1] * n)
        total = Fraction(0)
        for k in range(2, n + 1):
            csum = Fraction(0)
            for comp in compositions(n, k):
                prod = Fraction(1)
                for m in comp:
                    prod *= a[m]
                csum += prod
            total += ((-p) ** (n - k) - Fraction(n) ** k) / fact[k] * csum
        a.append(total / (n - (-p) ** (n - 1)))
    return a


# ------------------------------------------------------------------ family


def test_eigen_recurrence_examples():
    sol = eigen_series(1, Fraction(1, 2), 10)
    assert sol.f.same_to(exp_minus_one(10))
    for n in (1, 2, 3, 4, 5):
        s = eigen_series(n, 1, 2 * n + 1)
        assert s.f.coeff(2 * n + 1) == Fraction(n + 1, n + 2)


def test_eigen_displays_grid():
    for n in (1, 2, 3, 4, 5):
        for a in (1, Fraction(1, 2)):
            rep = check_eigen_displays(n, a)
            assert rep.passed, rep.failures()


def test_eigen_reciprocal_bernoulli_case():
    # n=1, A=1: x/f for f=(e^{2x}-1)/2 against direct division
    sol = eigen_series(1, 1, 12)
    recip = eigen_reciprocal(sol)
    want = divide(Series.x(13), exp_minus_one(13, 2) / 2)
    assert recip.same_to(want, order=11)
    assert recip.coeff(1) == -1 and recip.coeff(2) == Fraction(1, 3)


def test_eigen_rejects_bad_arguments():
    with pytest.raises(errors.OutOfRange):
        eigen_series(0, 1, 5)
    with pytest.raises(errors.OutOfRange):
        eigen_series(3, 1, 3)


# ------------------------------------------------------------------- kernels


def test_phi_closed_forms_order_24():
    assert phi_series(2, 24).series.same_to(phi_two_closed_form(24))
    assert phi_series(4, 24).series.same_to(phi_four_closed_form(24))
    assert phi_series(1, 16).series.same_to(log_one_plus(16))


def test_phi_against_composition_sum_oracle():
    for p in (Fraction(1), Fraction(2), Fraction(5, 3), Fraction(-1, 2)):
        got = phi_series(p, 9).series
        want = phi_coefficient_oracle(p, 9)
        assert [got.coeff(n) for n in range(1, 10)] == want[1:]


def test_phi_second_coefficient_formula():
    for p in (1, 2, 3, Fraction(7, 2)):
        assert phi_series(p, 3).series.coeff(2) == Fraction(-3, 2 * (p + 2))


def test_phi_degenerate_parameter():
    with pytest.raises(errors.DegenerateParameter):
        phi_series(-2, 6)


def test_phi_kernel_equation_general_p():
    for p in (3, Fraction(1, 2), Fraction(-1, 3)):
        assert check_phi_kernel_equation(phi_series(p, 12)).passed


def test_phi_endpoints_and_convergence_trend():
    zero, infinite = phi_endpoints(12)
    assert zero.p == 0 and infinite.p is None
    assert infinite.series.same_to(Series.x(12))
    a2_0 = zero.series.coeff(2)
    a2_10 = phi_series(Fraction(1, 10), 3).series.coeff(2)
    a2_100 = phi_series(Fraction(1, 100), 3).series.coeff(2)
    assert abs(a2_100 - a2_0) < abs(a2_10 - a2_0)
    # trend toward the infinite endpoint: A_2(p) -> 0
    assert abs(phi_series(100, 3).series.coeff(2)) < abs(
        phi_series(10, 3).series.coeff(2))


def test_phi_zero_series_matches_psi_route():
    # phi_zero_series asserts the agreement internally; spot-check values too
    z = phi_zero_series(8)
    psi = psi_series(9)
    assert z.same_to(-logarithm(divide(psi, Series.x(9))))


# ------------------------------------------------------------- psi, lambert


def test_psi_series_first_coefficients():
    psi = psi_series(8)
    assert psi.coeff_list(1, 3) == [1, -1, Fraction(5, 4)]
    # ODE oracle directly: x psi' = psi e^{-psi}
    lhs = psi.derivative() * Series.x(8)
    rhs = psi * exponential(-psi)
    assert lhs.same_to(rhs)


def test_lambert_w_round_trip():
    w = lambert_w(10)
    assert w.coeff_list(1, 3) == [1, -1, Fraction(3, 2)]
    xe = Series.x(10) * exponential(Series.from_terms({1: 1}, 10))
    assert compose(xe, w).same_to(Series.x(10))


def test_endpoint_identities_order_20():
    rep = check_endpoint_identities(20)
    assert rep.passed, rep.failures()


# ------------------------------------------------------------ elliptic sine


def test_elliptic_sine_known_coefficients():
    th = elliptic_sine(0, 11).series
    assert th.coeff_list(1, 5) == [1, 0, Fraction(-1, 6), 0, Fraction(1, 120)]
    for m in (Fraction(1, 4), 3, -2):
        s = elliptic_sine(m, 7).series
        assert s.coeff(3) == Fraction(-(1 + m), 6)
        assert s.coeff(5) == (1 + 14 * Fraction(m) + Fraction(m) ** 2) / 120


def test_elliptic_doubling_and_fault_injection():
    assert check_elliptic_doubling(0, 25).passed
    assert check_elliptic_doubling(Fraction(1, 4), 25).passed
    theta = elliptic_sine(Fraction(1, 4), 15).series
    bad = theta.with_coeff(7, theta.coeff(7) + 1)
    res = check_elliptic_doubling(Fraction(1, 4), 15, theta=bad)
    assert not res.passed and "x^7" in res.detail


def test_degenerate_modulus_self_check():
    # m=1: (T')^2 = (1-T^2)^2 comes out of the constructor's internal ODE check
    s = elliptic_sine(1, 13).series
    one = Series.one(13)
    assert (s.derivative() ** 2).same_to((one - s * s) ** 2)


# ------------------------------------------------------- conditional transport


def test_exp_transport_from_scaling_family():
    # q = log(f/x) for the n=1 family satisfies the premise with M=1, p=1
    a = Fraction(1, 3)
    f = eigen_series(1, a, 12).f
    q = logarithm(divide(f, Series.x(12)))
    rep = check_exp_transport(q, 1, 1, 12)
    assert rep.passed, rep.failures()


def test_exp_transport_degenerate_scale():
    rep = check_exp_transport(Series.x(8), 0, 1, 8)
    assert rep.passed


def test_exp_transport_premise_violation():
    q = Series.from_terms({1: 1, 2: 1}, 8)
    with pytest.raises(errors.PremiseViolated):
        check_exp_transport(q, 1, 1, 8)


# ------------------------------------------------------ index-evaluation laws


def test_phi_index_laws_p1_to_p4():
    for p in (1, 2, 3, 4):
        rep = check_phi_index_laws(p, 10)
        assert rep.passed, rep.failures()
