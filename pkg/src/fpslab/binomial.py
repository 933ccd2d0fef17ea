"""Binomial-type polynomial families and their canonical index continuations.

A family {p_n} is generated by exp(a * rev(f)(x)) for its associated series
f; the canonical continuation replaces the integer index by a formal one:

    p_s(a) = sum_n C(s-1, n) q_n(s) a^(s-n),   (x/f(x))^s = sum q_n(s) x^n/n!

The drivers in this module machine-check the index-derivative identities,
the deformed-logarithm ladder, and the reflection laws satisfied by the
two-parameter exponential-difference family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import errors
from .alphaexpr import AlphaExpr, adapted_log
from .report import Check, Report, check_series, check_true
from .rings import POLY, Poly, binomial, rat
from .series import (
    Series, divide, exponential, forward_delta, inverse_dlog,
    inverse_dlog_preimage, power, reversion,
)


# ------------------------------------------------------------------ families


@dataclass(frozen=True)
class BinomialFamily:
    """p_0..p_n_max with f(D) p_n = n p_{n-1} and the binomial convolution."""

    f: Series
    pn: tuple[Poly, ...]
    n_max: int

    def polynomial(self, n: int) -> Poly:
        if not 0 <= n <= self.n_max:
            raise errors.OutOfRange(f"family holds p_0..p_{self.n_max}")
        return self.pn[n]


def family_from_log_generator(gen: Series, n_max: int) -> BinomialFamily:
    """Family with sum p_n(a) x^n / n! = exp(a * gen(x)); gen is rev(f)."""
    gen.require_normalized("binomial family generator")
    if gen.order < n_max:
        raise errors.OrderExhausted(f"generator must be known to order {n_max}")
    alpha = Poly.variable()
    e = exponential(gen.lifted(POLY) * alpha)
    polys, fact = [], 1
    for n in range(0, n_max + 1):
        if n:
            fact *= n
        polys.append(e.coeff(n) * fact)
    return BinomialFamily(f=reversion(gen), pn=tuple(polys), n_max=n_max)


def family_from_series(f: Series, n_max: int) -> BinomialFamily:
    """Family associated to f (so that f(D) p_n = n p_{n-1})."""
    f.require_normalized("binomial family")
    fam = family_from_log_generator(reversion(f), n_max)
    return BinomialFamily(f=f, pn=fam.pn, n_max=n_max)


def poly_series_in_d(g: Series, p: Poly) -> Poly:
    """g(D) applied to a polynomial; D is nilpotent so the sum is finite."""
    if g.order < p.degree:
        raise errors.OrderExhausted(
            f"operator series known to order {g.order} < degree {p.degree}")
    acc = Poly()
    term = p
    for k in range(0, p.degree + 1):
        c = g.coeff(k)
        if not g.ring.is_zero(c):
            acc = acc + term * c
        term = term.derivative()
    return acc


# ------------------------------------------------------------- continuations


@dataclass(frozen=True)
class CanonicalContinuation:
    """p_s as an asymptotic expression with polynomial-in-s tails."""

    f: Series
    qn: tuple[Poly, ...]
    ps: AlphaExpr

    @property
    def depth(self) -> int:
        return self.ps.depth

    def at_integer(self, m: int) -> AlphaExpr:
        return self.ps.at_index(m)

    def shifted(self, c: int) -> AlphaExpr:
        """p_{s+c}."""
        return self.ps.substitute_index(Poly((c, 1)))

    def reflected(self) -> AlphaExpr:
        """p_{1-s}."""
        return self.ps.substitute_index(Poly((1, -1)))

    def dot(self) -> AlphaExpr:
        """d/ds p_s; its log part is p_s itself (asserted)."""
        d = self.ps.d_index()
        if any(l != p for l, p in zip(d.logs, self.ps.plain)):
            raise AssertionError("index derivative lost its log-shape")
        return d

    def negative_index_rescaled(self, u: Poly) -> AlphaExpr:
        """(1/u) p_{-1}(alpha/u) = sum_n c_n u^n a^(-1-n) for affine u."""
        c = [binomial(Fraction(-2), n) * self.qn[n](Fraction(-1))
             for n in range(self.depth)]
        plain = [c[n] * u ** n for n in range(self.depth)]
        return AlphaExpr.build(-1, 0, plain, (), depth=self.depth)


def continuation_from_series(f: Series, depth: int) -> CanonicalContinuation:
    f.require_normalized("canonical continuation")
    if f.order < depth:
        raise errors.OrderExhausted(f"need f to order {depth} for depth {depth}")
    s = Poly.variable()
    u = divide(Series.x(f.order + 2, f.ring), f)
    qs = power(u.truncated(depth - 1) if u.order > depth - 1 else u, s)
    qn, fact = [], 1
    tails = []
    for n in range(0, depth):
        if n:
            fact *= n
        qn.append(qs.coeff(n) * fact)
        tails.append(binomial(s - 1, n) * qn[n])
    ps = AlphaExpr.build(0, 1, tails, (), depth=depth)
    cont = CanonicalContinuation(f=f, qn=tuple(qn), ps=ps)
    _check_integer_consistency(cont)
    return cont


def _check_integer_consistency(cont: CanonicalContinuation) -> None:
    """Substituting small integer indices must reproduce the family."""
    top = min(2, cont.depth - 1)
    fam = family_from_series(cont.f, top)
    for m in range(0, top + 1):
        got = cont.at_integer(m)
        want = AlphaExpr.from_alpha_poly(fam.polynomial(m), cont.depth)
        if got.first_mismatch(want) is not None:
            raise AssertionError(f"continuation disagrees with p_{m}")


# ------------------------------------------------------ comparison utilities


def check_alpha(name: str, got: AlphaExpr, want: AlphaExpr,
                levels: int | None = None) -> Check:
    """Exact comparison of asymptotic expressions over their common levels;
    `levels` requires at least that many comparable levels."""
    if levels is not None:
        common = got.known_levels_with(want)
        if common < levels:
            return Check(name, False,
                         f"only {common} comparable levels, need {levels}")
    bad = got.first_mismatch(want)
    if bad is None:
        return Check(name, True)
    a_exp, kind, g, w = bad
    return Check(name, False,
                 f"{kind} coefficient of {got.exponent_label(a_exp)}: "
                 f"got {g.format('s')}, want {w.format('s')}")


def substituted_argument(f: Series, u: Poly) -> Series:
    """f(u*x) over the polynomial ring, for a polynomial scale u."""
    return Series(POLY, f.shift,
                  [POLY.coerce(c) * u ** (f.shift + i)
                   for i, c in enumerate(f.coeffs)],
                  f.order)


def _ln_alpha(depth: int) -> AlphaExpr:
    return AlphaExpr.log_element(depth)


# ------------------------------------------------------- index-derivative laws


def check_dot_identities(f: Series, depth: int) -> Report:
    """dot-p_0 = adapted log of f/f'; dot-p_1 = alpha * adapted log of f."""
    cont = continuation_from_series(f, depth)
    dot = cont.dot()
    tf = inverse_dlog(f)
    c1 = check_alpha("dot-p0-adapted-log", dot.at_index(0),
                     adapted_log(tf, depth), levels=depth - 1)
    c2 = check_alpha("dot-p1-adapted-log", dot.at_index(1),
                     adapted_log(f, depth).alpha_shift(1), levels=depth - 1)
    # the two follow-up operator forms (valid for any f)
    fd_dot0 = dot.at_index(0).apply_operator(f)
    rhs0 = AlphaExpr.monomial(-1, 0, depth).apply_operator(f.derivative())
    c3 = check_alpha("fD-dot-p0", fd_dot0, rhs0)
    fd_dot1 = dot.at_index(1).apply_operator(f)
    rhs1 = AlphaExpr.monomial(0, 0, depth) + adapted_log(tf, depth)
    c4 = check_alpha("fD-dot-p1", fd_dot1, rhs1)
    return Report("dot-identities", (c1, c2, c3, c4))


def check_deformed_log_identities(p, a, depth: int) -> Report:
    """For f = delta_p * exp(-A x): the deformed-log ladder

        f(D) ln(p_s/a)        = -f((1-s)D) ln a
        f(D) (dot p_s / p_s)  = (1/(1-s)) p_{-1}(a/(1-s))
    """
    p, a = rat(p), rat(a)
    order = depth + 2
    f = forward_delta(p, order) * exponential(Series.from_terms({1: -a}, order))
    cont = continuation_from_series(f, depth)
    lhs1 = cont.ps.alpha_shift(-1).log().apply_operator(f)
    rhs1 = -(_ln_alpha(depth + 1).apply_operator(
        substituted_argument(f, Poly((1, -1)))))
    c1 = check_alpha(f"deformed-log[p={p},A={a}]", lhs1, rhs1,
                     levels=depth - 1)
    ratio = cont.dot() * cont.ps.inverted()
    lhs2 = ratio.apply_operator(f)
    rhs2 = cont.negative_index_rescaled(Poly((1, -1)))
    c2 = check_alpha(f"deformed-dot-ratio[p={p},A={a}]", lhs2, rhs2,
                     levels=depth - 1)
    # the index-1 specialization collapses to 1/alpha
    at1 = lhs2.substitute_index(Poly.const(1))
    c3 = check_alpha(f"dot-ratio-at-1[p={p},A={a}]", at1,
                     AlphaExpr.monomial(-1, 0, at1.depth))
    return Report("deformed-log", (c1, c2, c3))


def check_reflection_identities(p, a, depth: int) -> Report:
    """For f = delta_p (1 - A delta_{-p}): the reflected ladder

        f(D) ln(p_s/p_{1-s})  = (f(sD) - f((1-s)D)) ln a
        f(D) (dot p_s/p_s + dot p_{1-s}/p_{1-s})
                              = (1/s) p_{-1}(a/s) + (1/(1-s)) p_{-1}(a/(1-s))

    and the cross-family reflection with the undeformed delta family.
    """
    p, a = rat(p), rat(a)
    order = depth + 2
    f = forward_delta(p, order) * (1 - forward_delta(-p, order) * a)
    cont = continuation_from_series(f, depth)
    refl = cont.reflected()
    s = Poly.variable()
    lhs1 = (cont.ps * refl.inverted()).log().apply_operator(f)
    op = (substituted_argument(f, s)
          - substituted_argument(f, Poly((1, -1))))
    rhs1 = _ln_alpha(depth + 1).apply_operator(op)
    c1 = check_alpha(f"reflected-log[p={p},A={a}]", lhs1, rhs1,
                     levels=depth - 1)
    dot = cont.dot()
    ratio = dot * cont.ps.inverted()
    ratio_reflected = ratio.substitute_index(Poly((1, -1)))
    lhs2 = (ratio + ratio_reflected).apply_operator(f)
    rhs2 = (cont.negative_index_rescaled(s)
            + cont.negative_index_rescaled(Poly((1, -1))))
    c2 = check_alpha(f"reflected-dot-ratio[p={p},A={a}]", lhs2, rhs2,
                     levels=depth - 1)
    base = continuation_from_series(forward_delta(p, order), depth)
    lhs3 = base.ps * refl
    rhs3 = base.reflected() * cont.ps
    c3 = check_alpha(f"cross-reflection[p={p},A={a}]", lhs3, rhs3,
                     levels=depth - 1)
    return Report("reflection", (c1, c2, c3))


# ------------------------------------------------------------ reflection family


def reflection_cross_check(name: str, f: Series, g: Series,
                           depth: int) -> Check:
    """p_s^f p_{1-s}^g = p_s^g p_{1-s}^f as an exact comparison."""
    cf = continuation_from_series(f, depth)
    cg = continuation_from_series(g, depth)
    return check_alpha(name, cf.ps * cg.reflected(), cg.ps * cf.reflected(),
                       levels=depth - 1)


def check_reflection_family(p, a, b, depth: int) -> Report:
    """Instances of the two-parameter family: reflection, the product
    condition f * preimage(f) = g * preimage(g), and the linear ODE relation
    f' + g''(0) f = g' + f''(0) g."""
    p, a, b = rat(p), rat(a), rat(b)
    order = depth + 2
    f = forward_delta(p, order) * (1 + forward_delta(-p, order) * a)
    g = forward_delta(p, order) * (1 + forward_delta(-p, order) * b)
    c1 = reflection_cross_check(f"family-reflection[p={p},A={a},B={b}]",
                                f, g, depth)
    lhs = f * inverse_dlog_preimage(f)
    rhs = g * inverse_dlog_preimage(g)
    c2 = check_series(f"preimage-product[p={p},A={a},B={b}]", lhs, rhs)
    fpp = 2 * f.coeff(2)
    gpp = 2 * g.coeff(2)
    c3 = check_series(f"linear-ode[p={p},A={a},B={b}]",
                      f.derivative() + f.truncated(order - 1) * gpp,
                      g.derivative() + g.truncated(order - 1) * fpp)
    return Report("reflection-family", (c1, c2, c3))


# ------------------------------------------------------------ shift structure


def check_shift_structure(n_max: int, depth: int, basis_max: int = 8) -> Report:
    """For the exponential-difference family (f = e^x - 1):

    (i)  (a e^{-D})^n = p_n(a) e^{-nD} as operators on monomials;
    (ii) dot p_n / p_n = (dot p_0)(a - n) via the shift operator.
    """
    order = max(depth + 2, basis_max + 2, n_max + 2)
    f = forward_delta(1, order)
    fam = family_from_series(f, n_max)
    checks = []
    alpha = Poly.variable()
    shift_minus1 = Poly((-1, 1))
    bad = None
    for n in range(0, n_max + 1):
        pn = fam.polynomial(n)
        for m in range(0, basis_max + 1):
            q = Poly.monomial(m)
            lhs = q
            for _ in range(n):
                lhs = lhs(shift_minus1) * alpha
            rhs = pn * q(Poly((-n, 1)))
            if lhs != rhs and bad is None:
                bad = (n, m)
    checks.append(check_true("shift-operator-power", bad is None,
                             f"fails first at n,m={bad}"))
    cont = continuation_from_series(f, depth)
    dot = cont.dot()
    dot0 = dot.at_index(0)
    shift_op = exponential(Series.from_terms({1: -1}, depth + 1))
    bad = None
    for n in range(1, n_max + 1):
        lhs = dot.at_index(n) * AlphaExpr.from_alpha_poly(
            fam.polynomial(n), depth).inverted()
        rhs = dot0
        for _ in range(n):
            rhs = rhs.apply_operator(shift_op)
        res = check_alpha(f"dot-ratio-shift[n={n}]", lhs, rhs)
        if not res.passed and bad is None:
            bad = (n, res.detail)
    checks.append(check_true("dot-ratio-shift", bad is None, f"{bad}"))
    return Report("shift-structure", tuple(checks))


# ------------------------------------------------------------------ utilities


def exp_integral_family(n_max: int, order: int | None = None) -> BinomialFamily:
    """The family associated to the preimage of x e^{-x} (generator: the
    reverted preimage series); its polynomials satisfy n p_n(a) = a p_n'(a-1)."""
    order = order if order is not None else n_max + 2
    pre = inverse_dlog_preimage(
        Series.x(order) * exponential(Series.from_terms({1: -1}, order)))
    return family_from_series(pre, n_max)


def check_translation_property(n_max: int) -> Check:
    """n p_n(a) = a p_n'(a-1) for the exp-integral family."""
    fam = exp_integral_family(n_max)
    alpha = Poly.variable()
    for n in range(1, n_max + 1):
        nu = fam.polynomial(n)
        lhs = nu * n
        rhs = alpha * nu.derivative()(Poly((-1, 1)))
        if lhs != rhs:
            return Check("translation-property", False, f"fails at n={n}")
    return Check("translation-property", True)
