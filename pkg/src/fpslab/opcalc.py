"""Shift/derivation operator calculus on exact polynomials.

For a normalized series f the two operators on polynomials in the expansion
variable are

    shift:       A_f q = alpha * (1/f')(D) q        (degree + 1)
    derivation:  D_f q = f(D) q                     (degree - 1 at least)

with commutator D_f A_f - A_f D_f = 1.  The drivers here machine-check the
operator falling-factorial representation of the preimage family, the three
ordered-product formulas, the Stirling-sum expansions of the exp-integral
polynomials, the combinatorial form of the reverted preimage, and the
factorial operator identity for the two-parameter exponential family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import errors
from .binomial import family_from_series, poly_series_in_d
from .report import Check, Report, check_series, check_true
from .rings import Poly, rat
from .series import (
    Series, divide, forward_delta, inverse_dlog, inverse_dlog_preimage,
    reversion,
)


# ------------------------------------------------------------------ operators


@dataclass(frozen=True)
class PolyOperator:
    """A finite composition of primitive operators on polynomials."""

    name: str
    fn: Callable[[Poly], Poly]

    def __call__(self, q: Poly) -> Poly:
        return self.fn(q)

    def __matmul__(self, other: "PolyOperator") -> "PolyOperator":
        return PolyOperator(f"{self.name}@{other.name}",
                            lambda q: self.fn(other.fn(q)))

    def __pow__(self, n: int) -> "PolyOperator":
        if n < 0:
            raise ValueError("operator powers must be nonnegative")
        ops = [self] * n
        return PolyOperator(f"({self.name})^{n}",
                            lambda q: _chain(ops, q))

    def agrees_with(self, other: "PolyOperator", max_degree: int) -> int | None:
        """Smallest basis degree where the two disagree, or None."""
        for m in range(0, max_degree + 1):
            if self(Poly.monomial(m)) != other(Poly.monomial(m)):
                return m
        return None


def _chain(ops, q: Poly) -> Poly:
    for op in reversed(ops):
        q = op(q)
    return q


def mul_alpha() -> PolyOperator:
    alpha = Poly.variable()
    return PolyOperator("alpha*", lambda q: alpha * q)


def series_operator(g: Series, name: str = "g(D)") -> PolyOperator:
    return PolyOperator(name, lambda q: poly_series_in_d(g, q))


def _inverse_derivative(f: Series) -> Series:
    f.require_normalized("shift operator")
    return divide(Series.one(f.order + 1, f.ring), f.derivative())


def shift_apply(f: Series, q: Poly) -> Poly:
    """A_f q = alpha * (1/f')(D) q."""
    return Poly.variable() * poly_series_in_d(_inverse_derivative(f), q)


def derivation_apply(f: Series, q: Poly) -> Poly:
    """D_f q = f(D) q."""
    f.require_normalized("derivation operator")
    return poly_series_in_d(f, q)


def shift_operator(f: Series) -> PolyOperator:
    return PolyOperator("A_f", lambda q: shift_apply(f, q))


def derivation_operator(f: Series) -> PolyOperator:
    return PolyOperator("D_f", lambda q: derivation_apply(f, q))


def invert_shift_power(f: Series, n: int, target: Poly) -> Poly:
    """Solve A_f^n q = target by back-substitution on the monomial basis.

    A_f raises degree by exactly one with unit leading action, so the system
    is triangular; raises DegreeMismatch when the target is not in the image.
    """
    a_f = shift_operator(f)
    if target.is_zero:
        return Poly()
    if target.degree < n:
        raise errors.DegreeMismatch("target degree below the shift power")
    q = Poly()
    rem = target
    for i in range(target.degree - n, -1, -1):
        c = rem.coeff(i + n)
        if c:
            q = q + Poly.monomial(i, c)
            rem = rem - (a_f ** n)(Poly.monomial(i, c))
    if not rem.is_zero:
        raise errors.DegreeMismatch("target is not in the image of the shift power")
    return q


# ---------------------------------------------------- preimage family formula


def preimage_poly_from_operator(f: Series, q: Poly, n: int) -> Poly:
    """p_n of the preimage family via (1/n!) (alpha f(D))_n q for monic q.

    The result is independent of the choice of monic degree-n q.
    """
    if q.degree != n:
        raise errors.DegreeMismatch(f"polynomial must have degree {n}")
    if q.lead != 1:
        raise errors.NotMonic("polynomial must be monic")
    f.require_normalized("operator falling factorial")
    alpha = Poly.variable()
    acc = q
    fact = 1
    for j in range(n - 1, -1, -1):
        acc = alpha * poly_series_in_d(f, acc) - j * acc
    for j in range(2, n + 1):
        fact *= j
    return acc / Fraction(fact)


def check_operator_factorial_family(f: Series, n_max: int) -> Report:
    """Monic-independence of the operator formula and agreement with the
    directly generated preimage family."""
    pre = inverse_dlog_preimage(f)
    fam = family_from_series(pre, n_max)
    checks = []
    alpha = Poly.variable()
    for n in range(1, n_max + 1):
        via_power = preimage_poly_from_operator(f, Poly.monomial(n), n)
        falling = Poly.const(1)
        for j in range(n):
            falling = falling * (alpha - j)
        via_falling = preimage_poly_from_operator(f, falling, n)
        checks.append(check_true(
            f"monic-independence[n={n}]", via_power == via_falling,
            f"{via_power.format('a')} != {via_falling.format('a')}"))
        checks.append(check_true(
            f"matches-family[n={n}]", via_power == fam.polynomial(n),
            f"{via_power.format('a')} != {fam.polynomial(n).format('a')}"))
    return Report("operator-factorial-family", tuple(checks))


def check_commutator(f: Series, max_degree: int) -> Check:
    """D_f A_f - A_f D_f = identity on the monomial basis."""
    a_f, d_f = shift_operator(f), derivation_operator(f)
    for m in range(0, max_degree + 1):
        q = Poly.monomial(m)
        got = d_f(a_f(q)) - a_f(d_f(q))
        if got != q:
            return Check("commutator", False, f"fails on degree {m}")
    return Check("commutator", True)


# ------------------------------------------------------ ordered product forms


def check_ordered_products(f: Series, n_max: int) -> Report:
    """The three ordered-product formulas for p_{n+1}/alpha of the family of
    f, of f/f', and of the preimage of f, plus the interchange identity
    f'(D)^n p_n = p_{n+1}^{f/f'} / alpha."""
    order = f.order
    ratio_r = divide(f.derivative().derivative(), f.derivative())
    ratio_s = divide(f.derivative() - 1, f)
    fam_f = family_from_series(f, n_max + 1)
    fam_t = family_from_series(inverse_dlog(f), n_max + 1)
    fam_p = family_from_series(inverse_dlog_preimage(f), n_max + 1)
    alpha = Poly.variable()
    checks = []
    for n in range(0, n_max + 1):
        lhs = Poly.const(1)
        for j in range(n, 0, -1):
            lhs = alpha * lhs - j * poly_series_in_d(ratio_r, lhs)
        checks.append(check_true(
            f"family-product[n={n}]",
            lhs == _poly_divided_by_alpha(fam_f.polynomial(n + 1)),
            f"got {lhs.format('a')}"))
        lhs = Poly.const(1)
        for j in range(1, n + 1):
            lhs = alpha * lhs + j * poly_series_in_d(ratio_r, lhs)
        checks.append(check_true(
            f"image-product[n={n}]",
            lhs == _poly_divided_by_alpha(fam_t.polynomial(n + 1)),
            f"got {lhs.format('a')}"))
        lhs = Poly.const(1)
        for j in range(n, 0, -1):
            lhs = alpha * lhs + j * poly_series_in_d(ratio_s, lhs)
        checks.append(check_true(
            f"preimage-product[n={n}]",
            lhs == _poly_divided_by_alpha(fam_p.polynomial(n + 1)),
            f"got {lhs.format('a')}"))
        interchanged = fam_f.polynomial(n)
        fprime = f.derivative()
        for _ in range(n):
            interchanged = poly_series_in_d(fprime, interchanged)
        checks.append(check_true(
            f"interchange[n={n}]",
            interchanged == _poly_divided_by_alpha(fam_t.polynomial(n + 1)),
            f"got {interchanged.format('a')}"))
    return Report("ordered-products", tuple(checks))


def _poly_divided_by_alpha(p: Poly) -> Poly:
    if p.coeff(0) != 0:
        raise errors.DegreeMismatch("polynomial has a nonzero constant term")
    return Poly(p.coeffs[1:])


# ------------------------------------------------------------- stirling sums


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    """Row of signed Stirling numbers of the first kind: coefficients of the
    falling factorial; s(n+1,k) = s(n,k-1) - n*s(n,k)."""
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for k in range(0, n):
        row[k + 1] += prev[k]
        row[k] -= (n - 1) * prev[k]
    return tuple(row)


def stirling_first(n: int, k: int) -> Fraction:
    if not 0 <= k <= n:
        raise errors.OutOfRange(f"need 0 <= k <= n, got ({n}, {k})")
    return Fraction(_stirling_row(n)[k])


def _factorials(top: int) -> list[int]:
    out = [1]
    for i in range(1, top + 1):
        out.append(out[-1] * i)
    return out


def _prefix_weights_multinomial(n: int) -> list[list[Fraction]]:
    """U_j(P) = sum over j parts >= 0 summing to P of prod 1/m_i! times the
    prefix chain (n - P_1)...(n - P_j)."""
    fact = _factorials(n)
    rows = [[Fraction(1)] + [Fraction(0)] * (n - 1)]
    for _ in range(1, n):
        prev = rows[-1]
        row = []
        for p_sum in range(0, n):
            acc = Fraction(0)
            for m in range(0, p_sum + 1):
                if prev[p_sum - m]:
                    acc += prev[p_sum - m] / fact[m]
            row.append(acc * (n - p_sum))
        rows.append(row)
    return rows


def _prefix_weights_ratio(n: int) -> list[list[Fraction]]:
    """V_j(P) = sum over j parts >= 0 summing to P of
    prod (n - P_{i-1})/(m_i + 1)."""
    rows = [[Fraction(1)] + [Fraction(0)] * (n - 1)]
    for _ in range(1, n + 1):
        prev = rows[-1]
        row = []
        for p_sum in range(0, n):
            acc = Fraction(0)
            for m in range(0, p_sum + 1):
                if prev[p_sum - m]:
                    acc += prev[p_sum - m] * Fraction(n - (p_sum - m), m + 1)
            row.append(acc)
        rows.append(row)
    return rows


def nu_from_stirling_sum(n: int, variant: str = "multinomial") -> Poly:
    """The exp-integral polynomial from either Stirling-sum expansion.

    variant "multinomial": prefix chains against multinomial weights and a
    final (1-alpha)^m factor; variant "ratio": ratio chains against a final
    binomial-coefficient factor.
    """
    if n < 1:
        raise errors.OutOfRange("defined for n >= 1")
    alpha = Poly.variable()
    sign = Fraction((-1) ** (n - 1))
    if variant == "multinomial":
        fact = _factorials(n)
        u = _prefix_weights_multinomial(n)
        one_minus = Poly((1, -1))
        total = Poly()
        for k in range(1, n + 1):
            inner = Poly()
            for p_sum in range(0, n):
                w = u[k - 1][p_sum]
                if w:
                    inner = inner + (one_minus ** (n - 1 - p_sum)) * (
                        w / fact[n - 1 - p_sum])
            total = total + stirling_first(n, k) * inner
        return alpha * total * sign
    if variant == "ratio":
        v = _prefix_weights_ratio(n)
        total = Poly()
        for k in range(1, n + 1):
            inner = Poly()
            for p_sum in range(0, n):
                w = v[k][p_sum]
                if w:
                    m = n - 1 - p_sum
                    binom_poly = Poly.const(1)
                    for i in range(m):
                        binom_poly = binom_poly * (Poly((m - i, -1)) / (i + 1))
                    inner = inner + binom_poly * w
            total = total + stirling_first(n, k) * inner
        return alpha * total * (sign / n)
    raise errors.OutOfRange(f"unknown variant {variant!r}")


def an_from_stirling_sum(n: int, variant: str = "multinomial") -> Fraction:
    """The reverted-preimage coefficient a_n from either scalar Stirling sum."""
    if n < 1:
        raise errors.OutOfRange("defined for n >= 1")
    sign = Fraction((-1) ** (n - 1))
    fact = _factorials(n)
    if variant == "multinomial":
        u = _prefix_weights_multinomial(n)
        total = Fraction(0)
        for k in range(1, n + 1):
            inner = sum((u[k - 1][p] / fact[n - 1 - p]
                         for p in range(0, n) if u[k - 1][p]), Fraction(0))
            total += stirling_first(n, k) * inner
        return sign * total / fact[n]
    if variant == "ratio":
        v = _prefix_weights_ratio(n)
        total = Fraction(0)
        for k in range(1, n + 1):
            inner = sum((v[k][p] for p in range(0, n) if v[k][p]), Fraction(0))
            total += stirling_first(n, k) * inner
        return sign * total / (n * fact[n])
    raise errors.OutOfRange(f"unknown variant {variant!r}")


def check_stirling_sums(nu_max: int, an_max: int) -> Report:
    """Both polynomial variants against the generic family; both scalar
    variants against each other and the reverted-preimage coefficients."""
    from .binomial import exp_integral_family
    from .eigen import psi_series

    fam = exp_integral_family(nu_max)
    checks = []
    bad = None
    for n in range(1, nu_max + 1):
        want = fam.polynomial(n)
        for variant in ("multinomial", "ratio"):
            got = nu_from_stirling_sum(n, variant)
            if got != want and bad is None:
                bad = (n, variant)
    checks.append(check_true("nu-sums", bad is None, f"fails first at {bad}"))
    psi = psi_series(an_max)
    bad = None
    for n in range(1, an_max + 1):
        a_m = an_from_stirling_sum(n, "multinomial")
        a_r = an_from_stirling_sum(n, "ratio")
        if not (a_m == a_r == psi.coeff(n)) and bad is None:
            bad = (n, a_m, a_r, psi.coeff(n))
    checks.append(check_true("an-sums", bad is None, f"fails first at {bad}"))
    return Report("stirling-sums", tuple(checks))


# ---------------------------------------------- combinatorial reverted preimage


def combinatorial_reverted_preimage(c: Series, order: int) -> Series:
    """rev(preimage(c)) by the Stirling/composition sum

        [x^n] = (1/n!) sum_k s(n,k) sum_{m_1+...+m_k=n-1}
                c_{1+m_1}...c_{1+m_k} (n-P_1)(n-P_2)...(n-P_k)

    (the final factor n - P_k equals 1 identically since the parts sum to
    n-1; it is kept as displayed).  Must equal the series-route computation;
    callers compare against reversion(inverse_dlog_preimage(c)).
    """
    c.require_normalized("combinatorial reverted preimage")
    if c.order < order:
        raise errors.OrderExhausted(f"need input to order {order}")
    fact = _factorials(order)
    out = {1: Fraction(1)}
    for n in range(2, order + 1):
        rows = [[Fraction(1)] + [Fraction(0)] * (n - 1)]
        for _ in range(1, n + 1):
            prev = rows[-1]
            row = []
            for p_sum in range(0, n):
                acc = Fraction(0)
                for m in range(0, p_sum + 1):
                    if prev[p_sum - m]:
                        acc += prev[p_sum - m] * c.coeff(1 + m)
                row.append(acc * (n - p_sum))
            rows.append(row)
        total = sum((stirling_first(n, k) * rows[k][n - 1]
                     for k in range(1, n + 1)), Fraction(0))
        out[n] = total / fact[n]
    return Series.from_terms(out, order)


def check_combinatorial_reversion(c: Series, order: int) -> Check:
    got = combinatorial_reverted_preimage(c, order)
    want = reversion(inverse_dlog_preimage(c.truncated(order)))
    return check_series("combinatorial-reverted-preimage", got, want,
                        order=order)


# ----------------------------------------------------- factorial operator law


def check_shift_factorial_identity(p, a, n_max: int, m_max: int,
                                   perturb: tuple[int, int] | None = None) -> Report:
    """For f built from the two-parameter exponential family:

        A_f^(n+1) f'(D)^(2n+1) A_f^n = product_{j=-n..n} (alpha + j p)

    on the monomial basis, plus the quotient law g_n = (alpha^2 - n^2 p^2) g_{n-1}.
    `perturb=(n, m)` adds 1 to that basis image (fault-injection seam).
    """
    p, a = rat(p), rat(a)
    order = m_max + 2 * n_max + 3
    f = forward_delta(p, order) * (1 + forward_delta(-p, order) * a)
    a_f = shift_operator(f)
    fprime_op = series_operator(f.derivative(), "f'(D)")
    alpha = Poly.variable()

    def g_n(n: int, q: Poly) -> Poly:
        for _ in range(n):
            q = a_f(q)
        for _ in range(2 * n + 1):
            q = fprime_op(q)
        for _ in range(n + 1):
            q = a_f(q)
        return q

    checks = []
    prev_images: list[Poly] = []
    for n in range(0, n_max + 1):
        rhs_poly = Poly.const(1)
        for j in range(-n, n + 1):
            rhs_poly = rhs_poly * (alpha + j * p)
        quot = alpha * alpha - Poly.const(n * n * p * p)
        bad = None
        images = []
        for m in range(0, m_max + 1):
            q = Poly.monomial(m)
            got = g_n(n, q)
            if perturb == (n, m):
                got = got + 1
            images.append(got)
            if got != rhs_poly * q and bad is None:
                bad = m
            if n >= 1 and got != quot * prev_images[m] and bad is None:
                bad = m
        checks.append(check_true(
            f"factorial-identity[p={p},A={a},n={n}]", bad is None,
            f"fails on basis degree {bad}"))
        prev_images = images
    return Report("shift-factorial", tuple(checks))
