"""The rescaling fixed-point family of f/f' and its companion series.

Solves f/f' = f(px)/p through the rational coefficient recurrences (the
scaling factor p itself, a root of p^n = -n, never appears), builds the
exponent-kernel series that linearizes the problem, the elliptic-sine
family solving the doubled equation, and the limit series (the reverted
preimage of x*exp(-x), and the Lambert W series).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import errors
from .report import Check, Report, check_series, check_true
from .rings import POLY, Poly, rat
from .series import (
    Series, compose, damped_exponential, divide, exponential, inverse_dlog,
    inverse_dlog_preimage, logarithm, power, reversion,
)


# ----------------------------------------------------------- the f_n family


@dataclass(frozen=True)
class EigenSolution:
    """Solution x + a*x^(n+1) + ... of the rescaling equation with p^n = -n."""

    n: int
    a: Fraction
    f: Series
    order: int

    @property
    def ladder(self) -> list[Fraction]:
        """Coefficients of x^(k*n+1) for k = 0, 1, ..."""
        return [self.f.coeff(k * self.n + 1)
                for k in range(0, (self.order - 1) // self.n + 1)]


def _ladder_divisor(n: int, k: int) -> Fraction:
    d = Fraction(k) - Fraction(-n) ** (k - 1)
    if d == 0:
        raise errors.DegenerateDivisor(
            f"recurrence divisor vanished at k={k} for n={n}")
    return d


def eigen_series(n: int, a, order: int) -> EigenSolution:
    """Solve the rescaling equation coefficientwise.

    The ladder recurrence (all indices in steps of n, l[k] multiplying
    x^(k*n+1)) is

        (k - (-n)^(k-1)) l[k] = sum_{m=1}^{k-1} (n*m+1) (-n)^(k-m-1) l[m] l[k-m]
    """
    if n < 1:
        raise errors.OutOfRange("n must be a positive integer")
    if order < n + 1:
        raise errors.OutOfRange("order must reach the first free coefficient x^(n+1)")
    a = rat(a)
    kmax = (order - 1) // n
    l = [Fraction(1), a]
    for k in range(2, kmax + 1):
        s = sum((n * m + 1) * Fraction(-n) ** (k - m - 1) * l[m] * l[k - m]
                for m in range(1, k))
        l.append(s / _ladder_divisor(n, k))
    f = Series.from_terms({k * n + 1: c for k, c in enumerate(l)}, order)
    return EigenSolution(n=n, a=a, f=f, order=order)


def eigen_reciprocal(sol: EigenSolution) -> Series:
    """x/f as a series in x^n, by its own dual recurrence

        (k - (-n)^(k-1)) b[k] = sum_{m=1}^{k-1} (-n)^(m-1) b[m] b[k-m]

    with b[1] = -a, cross-checked against direct division.
    """
    n, a = sol.n, sol.a
    kmax = sol.order // n
    b = [Fraction(1), -a]
    for k in range(2, kmax + 1):
        s = sum(Fraction(-n) ** (m - 1) * b[m] * b[k - m] for m in range(1, k))
        b.append(s / _ladder_divisor(n, k))
    recip = Series.from_terms({k * n: c for k, c in enumerate(b)},
                              kmax * n + n - 1)
    direct = divide(Series.x(sol.order + 1), sol.f)
    if not recip.same_to(direct):
        raise AssertionError("reciprocal recurrence disagrees with direct division")
    return recip


def eigen_displayed_coeffs(n: int, a: Fraction) -> dict[str, Fraction]:
    """Closed forms of the first displayed coefficients of f and x/f."""
    n = Fraction(n)
    return {
        "f2": (n + 1) / (n + 2) * a ** 2,
        "f3": (n + 1) * (n * n - n - 1) / ((n + 2) * (n * n - 3)) * a ** 3,
        "f4": (n + 1) * (n**6 - 2 * n**4 + 4 * n**3 - n**2 - 6 * n - 2)
              / ((n + 2) ** 2 * (n * n - 3) * (n**3 + 4)) * a ** 4,
        "r1": -a,
        "r2": a ** 2 / (n + 2),
        "r3": -a ** 3 * (n - 1) / ((n + 2) * (n * n - 3)),
        "r4": a ** 4 * (n**4 - n**2 + 4 * n - 2)
              / ((n + 2) ** 2 * (n * n - 3) * (n**3 + 4)),
        "r5": -a ** 5 * (n - 1) * (n * n + 2) * (n**4 - n**2 + 3 * n - 1)
              / ((n + 2) ** 2 * (n * n - 3) * (n**3 + 4) * (n**4 - 5)),
        "inv2": (a * (n + 1)) ** 2 / (n + 2),
        "inv3": (a * (n + 1)) ** 3 * (2 + 4 * n - 3 * n * n)
                / (2 * (n + 2) * (n * n - 3)),
    }


def check_eigen_displays(n: int, a, order: int | None = None) -> Report:
    """Displayed coefficients of f, x/f, and f^inv against the recurrences."""
    a = rat(a)
    order = order if order is not None else 5 * n + 1
    sol = eigen_series(n, a, max(order, 5 * n + 1))
    recip = eigen_reciprocal(sol)
    inv = reversion(sol.f)
    want = eigen_displayed_coeffs(n, a)
    checks = [
        check_true(f"f[n={n}]-x^{2*n+1}", sol.f.coeff(2 * n + 1) == want["f2"],
                   f"got {sol.f.coeff(2*n+1)}, want {want['f2']}"),
        check_true(f"f[n={n}]-x^{3*n+1}", sol.f.coeff(3 * n + 1) == want["f3"],
                   f"got {sol.f.coeff(3*n+1)}, want {want['f3']}"),
        check_true(f"f[n={n}]-x^{4*n+1}", sol.f.coeff(4 * n + 1) == want["f4"],
                   f"got {sol.f.coeff(4*n+1)}, want {want['f4']}"),
        check_true(f"recip[n={n}]-x^{2*n}", recip.coeff(2 * n) == want["r2"],
                   f"got {recip.coeff(2*n)}, want {want['r2']}"),
        check_true(f"recip[n={n}]-x^{3*n}", recip.coeff(3 * n) == want["r3"],
                   f"got {recip.coeff(3*n)}, want {want['r3']}"),
        check_true(f"recip[n={n}]-x^{4*n}", recip.coeff(4 * n) == want["r4"],
                   f"got {recip.coeff(4*n)}, want {want['r4']}"),
        check_true(f"recip[n={n}]-x^{5*n}", recip.coeff(5 * n) == want["r5"],
                   f"got {recip.coeff(5*n)}, want {want['r5']}"),
        check_true(f"inv[n={n}]-x^{n+1}", inv.coeff(n + 1) == -a,
                   f"got {inv.coeff(n+1)}, want {-a}"),
        check_true(f"inv[n={n}]-x^{2*n+1}", inv.coeff(2 * n + 1) == want["inv2"],
                   f"got {inv.coeff(2*n+1)}, want {want['inv2']}"),
        check_true(f"inv[n={n}]-x^{3*n+1}", inv.coeff(3 * n + 1) == want["inv3"],
                   f"got {inv.coeff(3*n+1)}, want {want['inv3']}"),
    ]
    support_ok = all(
        sol.f.coeff(e) == 0
        for e in range(1, sol.order + 1) if (e - 1) % n != 0)
    checks.append(check_true(f"f[n={n}]-support-mod-{n}", support_ok,
                             "nonzero coefficient off the x^(kn+1) ladder"))
    return Report(f"eigen-displays[n={n},a={a}]", tuple(checks))


# ----------------------------------------------------- the exponent kernels


@dataclass(frozen=True)
class PhiSeries:
    """Solution of the exponential-kernel equation at scale parameter p.

    Defined by: the reverted preimage of x*exp(-phi(x)) equals
    x*exp(phi(-p*x)/p).  Normalized, with second coefficient -3/(2(p+2)).
    """

    p: Fraction | None  # None marks the infinite endpoint
    series: Series

    @property
    def order(self) -> int:
        return self.series.order


def _phi_lhs_partial(coeffs: list[Fraction], p: Fraction, order: int) -> Series:
    """exp(-phi(-p x)/p) for the partial coefficient list (index = exponent)."""
    terms = {m: coeffs[m] * (-p) ** (m - 1) for m in range(1, len(coeffs))}
    return exponential(Series.from_terms(terms, order))


def phi_degeneracies(p: Fraction, order: int) -> list[int]:
    return [n for n in range(2, order + 1) if (-p) ** (n - 1) == n]


def phi_series(p, order: int) -> PhiSeries:
    """Solve the kernel recurrence

        (n - (-p)^(n-1)) A_n = sum_{k=2}^{n} ((-p)^(n-k) - n^k)/k! *
                               sum_{m_1+...+m_k=n, m_i>0} A_{m_1}...A_{m_k}

    with A_1 = 1, extracting each A_n from the equivalent per-coefficient
    identity [x^n] exp(-phi(-px)/p) = [x^n] exp(n*phi(x)).
    """
    p = rat(p)
    bad = phi_degeneracies(p, order)
    if bad:
        raise errors.DegenerateParameter(
            f"parameter p={p} is degenerate at n={bad}")
    coeffs = [Fraction(0), Fraction(1)]  # index = exponent
    for n in range(2, order + 1):
        partial = Series.from_terms(
            {m: c for m, c in enumerate(coeffs) if m >= 1}, n)
        lhs_known = _phi_lhs_partial(coeffs, p, n).coeff(n)
        rhs_known = exponential(partial * n).coeff(n)
        coeffs.append((rhs_known - lhs_known) / ((-p) ** (n - 1) - n))
    return PhiSeries(p, Series.from_terms(
        {m: c for m, c in enumerate(coeffs) if m >= 1}, order))


def phi_zero_series(order: int) -> Series:
    """The p = 0 kernel by its own recurrence
       A_n(0) = (1/n) sum_{k=2}^{n} (delta_{n,k} - n^k)/k! * (composition sums),
    evaluated as A_n = (1/n) (1/n! - [x^n] exp(n*phi_partial))."""
    coeffs = [Fraction(0), Fraction(1)]
    fact = 1
    for n in range(2, order + 1):
        fact *= n
        partial = Series.from_terms(
            {m: c for m, c in enumerate(coeffs) if m >= 1}, n)
        coeffs.append((Fraction(1, fact) - exponential(partial * n).coeff(n))
                      / n)
    return Series.from_terms({m: c for m, c in enumerate(coeffs) if m >= 1},
                             order)


def psi_series(order: int) -> Series:
    """Reverted preimage of x*exp(-x), cross-checked against its defining ODE
    x*psi' = psi*exp(-psi) solved as an independent coefficient recurrence."""
    direct = reversion(inverse_dlog_preimage(damped_exponential(order)))
    coeffs = [Fraction(0), Fraction(1)]
    for n in range(2, order + 1):
        partial = Series.from_terms(
            {m: c for m, c in enumerate(coeffs) if m >= 1}, n)
        k = (partial * exponential(-partial)).coeff(n)
        coeffs.append(k / (n - 1))
    ode = Series.from_terms({m: c for m, c in enumerate(coeffs) if m >= 1},
                            order)
    if not direct.same_to(ode):
        raise AssertionError("the two routes to the psi series disagree")
    return direct


def lambert_w(order: int) -> Series:
    """The compositional inverse of x*exp(x)."""
    xe = Series.x(order) * exponential(Series.from_terms({1: 1}, order))
    return reversion(xe)


def phi_endpoints(order: int) -> tuple[PhiSeries, PhiSeries]:
    """The p = 0 and p -> infinity kernels; the p = 0 one is computed from its
    recurrence and must agree with -log(psi/x).  The infinite endpoint (p
    field None) is exactly x."""
    zero = phi_zero_series(order)
    via_psi = -logarithm(divide(psi_series(order + 1), Series.x(order + 1)))
    if not zero.same_to(via_psi):
        raise AssertionError("the two routes to the p=0 kernel disagree")
    return (PhiSeries(Fraction(0), zero), PhiSeries(None, Series.x(order)))


def check_phi_kernel_equation(phi: PhiSeries, order: int | None = None) -> Check:
    """Defining identity: T(rev(x e^-phi)) = x e^{phi(-px)/p} to the order."""
    if not phi.p:
        raise ValueError("the kernel equation needs a finite nonzero p")
    f = phi.series if order is None else phi.series.truncated(order)
    n = f.order
    lhs = inverse_dlog(reversion(
        Series.x(n + 1) * exponential(-f)))
    scaled = compose(f, Series.from_terms({1: -phi.p}, n))
    rhs = Series.x(n + 1) * exponential(scaled / phi.p)
    return check_series(f"kernel-equation[p={phi.p}]", lhs, rhs)


# ------------------------------------------------------------ elliptic sine


@dataclass(frozen=True)
class ThetaSeries:
    """Odd series solving (T')^2 = (1 - T^2)(1 - m T^2), m the squared modulus."""

    m: Fraction
    series: Series

    @property
    def order(self) -> int:
        return self.series.order


def elliptic_sine(m, order: int) -> ThetaSeries:
    """Solve T'' = 2m T^3 - (m+1) T for the odd normalized solution."""
    m = rat(m)
    jmax = max((order - 1) // 2, 0)
    t = [Fraction(1)]
    for j in range(0, jmax):
        cube = sum(t[j1] * t[j2] * t[j - 1 - j1 - j2]
                   for j1 in range(j) for j2 in range(j - j1)
                   ) if j >= 1 else Fraction(0)
        t.append((2 * m * cube - (m + 1) * t[j]) / ((2 * j + 2) * (2 * j + 3)))
    series = Series.from_terms({2 * j + 1: c for j, c in enumerate(t)},
                               2 * jmax + 2)
    out = ThetaSeries(m, series.truncated(order) if series.order > order else series)
    # defining first-order form re-checked independently of the recurrence
    s = out.series
    lhs = s.derivative() ** 2
    one = Series.one(s.order, s.ring)
    rhs = (one - s ** 2) * (one - (s ** 2) * m)
    if not lhs.same_to(rhs):
        raise AssertionError("elliptic series violates its first-order ODE")
    return out


def check_elliptic_doubling(m, order: int, theta: Series | None = None) -> Check:
    """T(T(f)) = f(2x)/2 for the elliptic-sine series (accepts an override
    series so tests can inject faults)."""
    m = rat(m)
    f = theta if theta is not None else elliptic_sine(m, order).series
    lhs = inverse_dlog(inverse_dlog(f))
    doubled = compose(f, Series.from_terms({1: 2}, f.order))
    return check_series(f"elliptic-doubling[m={m}]", lhs, doubled / 2)


# ----------------------------------------------------- conditional transport


def check_exp_transport(q: Series, m_const, p, order: int) -> Report:
    """Premise: T(x e^{M q(x)}) = x e^{(M/p) q(-px)}.  Conclusion: the
    reverted representative transports as

        T(rev(x (1 - M x sigma')^p e^{-M sigma}))
            = x (1 + M p x sigma'(-px))^{-1} e^{(M/p) sigma(-px)}

    where rev(x e^{M q}) = x e^{-M sigma}.  Raises PremiseViolated when the
    premise fails.
    """
    m_const, p = rat(m_const), rat(p)
    q = q.truncated(order) if q.order > order else q
    n = q.order
    if m_const == 0:
        x = Series.x(n)
        lhs = inverse_dlog(reversion(x))
        return Report("exp-transport[M=0]",
                      (check_series("conclusion", lhs, x),))
    base = Series.x(n + 1) * exponential(q * m_const)
    prem_lhs = inverse_dlog(base)
    prem_rhs = Series.x(n + 1) * exponential(
        compose(q, Series.from_terms({1: -p}, n)) * (m_const / p))
    if not prem_lhs.same_to(prem_rhs):
        e = prem_lhs.first_mismatch(prem_rhs)
        raise errors.PremiseViolated(f"transport premise fails at x^{e}")
    sigma = -logarithm(divide(reversion(base), Series.x(base.order))) / m_const
    xsp = Series.x(sigma.order) * sigma.derivative()
    lhs_expr = (Series.x(sigma.order + 1)
                * power(1 + (xsp * (-m_const)), p)
                * exponential(sigma * (-m_const)))
    lhs = inverse_dlog(reversion(lhs_expr))
    sp_scaled = compose(sigma.derivative(),
                        Series.from_terms({1: -p}, sigma.order))
    xsp_scaled = Series.x(sp_scaled.order + 1) * sp_scaled
    rhs = (Series.x(xsp_scaled.order + 1)
           * (1 / (1 + xsp_scaled * (m_const * p)))
           * exponential(compose(sigma, Series.from_terms({1: -p}, sigma.order))
                         * (m_const / p)))
    return Report(f"exp-transport[M={m_const},p={p}]",
                  (check_series("premise", prem_lhs, prem_rhs),
                   check_series("conclusion", lhs, rhs)))


# ----------------------------------------------------- index-evaluation laws


def check_phi_index_laws(p, order: int, n_max: int | None = None) -> Report:
    """Two consequences of the kernel equation for the binomial family
    generated by exp(a*phi): the evaluation law (-p)^n P_n(-1/p) = P_n(n),
    and the diagonal-operator expansion

        exp(-phi(-px)/p) = sum_n (x d/dx)^n / n! (phi(x))^n.
    """
    p = rat(p)
    phi = phi_series(p, order)
    f = phi.series
    alpha = Poly.variable()
    gen = exponential(f.lifted(POLY) * alpha)
    n_max = n_max if n_max is not None else order
    checks = []
    fact = 1
    ok_n = None
    for n in range(0, n_max + 1):
        if n:
            fact *= n
        pn = gen.coeff(n) * fact
        lhs = (-p) ** n * pn(Fraction(-1) / p)
        rhs = pn(Fraction(n))
        if lhs != rhs and ok_n is None:
            ok_n = n
    checks.append(check_true(
        f"evaluation-law[p={p}]", ok_n is None,
        f"fails first at n={ok_n}"))
    lhs = exponential(compose(f, Series.from_terms({1: -p}, order)) * (Fraction(-1) / p))
    rhs = Series.one(order)
    fact = 1
    for n in range(1, order + 1):
        fact *= n
        rhs = rhs + (f ** n).x_d_dx(n) / fact
    checks.append(check_series(f"diagonal-expansion[p={p}]", lhs,
                               rhs, order=order))
    return Report(f"phi-index-laws[p={p}]", tuple(checks))


# ------------------------------------------------------------ closed forms


def phi_two_closed_form(order: int) -> Series:
    """log(1 + x + x^2/8)."""
    return logarithm(Series.from_terms({0: 1, 1: 1, 2: Fraction(1, 8)}, order))


def phi_four_closed_form(order: int) -> Series:
    """2*log(1 + x/2)."""
    return 2 * logarithm(Series.from_terms({0: 1, 1: Fraction(1, 2)}, order))


def quartic_inverse_integrand(n: int, order: int) -> Series:
    """(1 + 6t^2 + (9/2)t^4)^(-1/2) for n=2; (1 + 10t^4)^(-1/2) for n=4."""
    if n == 2:
        base = Series.from_terms({0: 1, 2: 6, 4: Fraction(9, 2)}, order)
    elif n == 4:
        base = Series.from_terms({0: 1, 4: 10}, order)
    else:
        raise ValueError("closed integrand known only for n=2 and n=4")
    return power(base, Fraction(-1, 2))


def check_quartic_inverse_integrals(order: int) -> Report:
    checks = []
    for n in (2, 4):
        sol = eigen_series(n, 1, order)
        inv = reversion(sol.f)
        integral = quartic_inverse_integrand(n, order).integral()
        checks.append(check_series(f"inverse-integral[n={n}]", inv,
                                   integral, order=order))
    return Report("quartic-inverse-integrals", tuple(checks))


def check_scaling_inverse_exp_integral(n: int, a, order: int | None = None) -> Check:
    """rev(f) = integral of exp(-(1/n) phi_n(a n (n+1) t^n)) dt, to 4n+1."""
    a = rat(a)
    order = order if order is not None else 4 * n + 1
    sol = eigen_series(n, a, order)
    phi = phi_series(n, order)
    inner = Series.from_terms({n: a * n * (n + 1)}, order)
    integrand = exponential(compose(phi.series, inner) * Fraction(-1, n))
    rhs = integrand.integral()
    return check_series(f"scaling-inverse-exp-integral[n={n},a={a}]",
                        reversion(sol.f), rhs, order=order)


def check_endpoint_identities(order: int) -> Report:
    """p=0 endpoint duality and the Lambert-W transport identity."""
    checks = []
    phi0, _ = phi_endpoints(order)
    lhs = inverse_dlog(reversion(
        Series.x(order + 1) * exponential(-phi0.series)))
    checks.append(check_series("endpoint-duality", lhs,
                               damped_exponential(order)))
    w = lambert_w(order + 1)
    w_neg = compose(w, Series.from_terms({1: -1}, w.order))
    lhs_w = inverse_dlog(-w_neg)
    rhs_w = Series.x(w_neg.order + 1) * (1 + w_neg)
    checks.append(check_series("lambert-transport", lhs_w, rhs_w,
                               order=order))
    return Report("endpoints", tuple(checks))
