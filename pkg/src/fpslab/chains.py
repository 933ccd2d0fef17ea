"""Integral-chain verification for the reverted-transform conjugate.

Every case pairs integrands I_j built from the base series

    base_p = rev((e^{px}-1)/p * e^{-x})

and checks that the reverted transform maps each integral onto the next:
rev(T(rev(int I_j))) = int I_{j+1}, coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .report import Report, check_series
from .rings import rat
from .series import (
    Series, compose, damped_delta, exponential, power, reversion,
    reverted_inverse_dlog,
)


def base_series(p, order: int) -> Series:
    """rev(forward_delta(p) * exp(-x)), the seed of every chain integrand."""
    return reversion(damped_delta(rat(p), order))


@dataclass(frozen=True)
class ChainCase:
    """One appendix chain instance: consecutive integrands at fixed parameters."""

    chain_id: int
    params: dict
    integrands: tuple[Series, ...]
    order: int

    @property
    def label(self) -> str:
        ps = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"chain{self.chain_id}[{ps}]"


def _monomial(coeff, exp: int, order: int) -> Series:
    return Series.from_terms({exp: rat(coeff)}, order)


def _scaled(f: Series, coeff, exp: int = 1) -> Series:
    """f(c * t^exp)."""
    return compose(f, _monomial(coeff, exp, f.order * exp + exp - 1))


def chain_case(chain_id: int, params: dict, order: int) -> ChainCase:
    """Build the integrand tuple of one chain at the given parameters."""
    work = order + 2
    p = rat(params.get("p", 0))
    n = int(params.get("n", 0))
    alpha = rat(params.get("alpha", 0))

    if chain_id == 1:
        g = base_series(Fraction(1, n), work)
        gp = g.derivative()
        i1 = power(Series.from_terms({0: 1, n: -1}, work), Fraction(-1, n))
        i2 = 1 / Series.from_terms({0: 1, n: 1}, work)
        i3 = (_scaled(gp, n, n)
              * exponential(_scaled(g, n, n) * Fraction(1 - n, n)))
        # the final integrand is built from u*g'(u) at u = n(1-n)t^n (the
        # prefactors carry the t^n; a bare g' would not even be normalized)
        u_gp = Series.from_terms({n: 1}, work) * _scaled(gp, n * (1 - n), n)
        i4 = ((1 + u_gp * (n * (1 - n))) ** 2) / (1 + u_gp * (n * (2 - n)))
        integrands = (i1, i2, i3, i4)
    elif chain_id == 2:
        g = base_series(Fraction(2, n), work)
        gp = g.derivative()
        i1 = power(Series.from_terms({0: 1, n: -1}, work), Fraction(-2, n))
        i2 = power(Series.from_terms({0: 1, n: 4}, work), Fraction(-1, 2))
        i3 = (_scaled(gp, 2 * n, n)
              * exponential(_scaled(g, 2 * n, n) * Fraction(2 - n, n)))
        integrands = (i1, i2, i3)
    elif chain_id == 3:
        g = base_series(p, work)
        i1 = exponential(g)
        i2 = (Series.from_terms({0: 1, 1: p - 1}, work)
              / Series.from_terms({0: 1, 1: p}, work))
        disc = power(Series.from_terms(
            {0: 1, 1: 2 * (p - 2), 2: p * p}, work), Fraction(1, 2))
        i3 = (Series.from_terms({0: 1, 1: p}, work) + disc) / (2 * disc)
        integrands = (i1, i2, i3)
    elif chain_id == 4:
        g = base_series(p, work)
        i1 = (power(Series.from_terms({0: 1, 1: 1}, work), -1 / p)
              * power(Series.from_terms({0: 1, 1: 1 - p}, work), 1 / p - 1))
        i2 = (g.derivative() ** 2) * exponential(g * (p - 2))
        integrands = (i1, i2)
    elif chain_id == 5:
        g = base_series(p, work)
        h = base_series(1 / p, work)
        i1 = power(g.derivative(), 1 - p) * exponential(g * (p * (1 - p)))
        hp_s = _scaled(h.derivative(), p)
        i2 = (hp_s ** 2) * exponential(_scaled(h, p) * (-2))
        integrands = (i1, i2)
    elif chain_id == 6:
        g = base_series(p, work)
        h = base_series(alpha, work)
        i1 = (power(g.derivative(), 1 - 1 / alpha)
              * exponential(g * ((1 - p) / alpha)))
        h_s = _scaled(h, 1 / alpha)
        hp_s = _scaled(h.derivative(), 1 / alpha)
        denom = 1 + Series.x(work) * exponential(h_s) * (1 - p)
        i2 = (hp_s / denom) * exponential(-h_s)
        integrands = (i1, i2)
    elif chain_id == 7:
        g = base_series(p, work)
        i1 = power(g.derivative(), Fraction(-1)) * exponential(g * (2 - p))
        disc = power(Series.from_terms(
            {0: 1, 1: 2 * (p - 2), 2: p * p}, work), Fraction(1, 2))
        i2 = (Series.from_terms({0: 1, 1: p - 2}, work) + disc) / (2 * disc)
        integrands = (i1, i2)
    elif chain_id == 8:
        g = base_series(p, work)
        q = p / (1 - alpha)
        h = base_series(q, work)
        i1 = exponential(g * alpha)
        h_s = _scaled(h, 1 - alpha)
        hp_s = _scaled(h.derivative(), 1 - alpha)
        i2 = hp_s * (Series.from_terms({1: p - 1}, work) + exponential(-h_s))
        integrands = (i1, i2)
    else:
        raise ValueError(f"unknown chain id {chain_id}")
    return ChainCase(chain_id=chain_id, params=dict(params),
                     integrands=tuple(i.truncated(work) if i.order > work else i
                                      for i in integrands),
                     order=order)


def verify_chain(case: ChainCase,
                 perturb: tuple[int, int] | None = None) -> Report:
    """Check every arrow of a chain case; `perturb=(arrow, exponent)` bumps
    one coefficient of that arrow's transformed side (fault-injection seam)."""
    checks = []
    for arrow in range(1, len(case.integrands)):
        lhs_integral = case.integrands[arrow - 1].truncated(case.order - 1).integral()
        image = reverted_inverse_dlog(lhs_integral)
        if perturb is not None and perturb[0] == arrow:
            image = image.with_coeff(perturb[1], image.coeff(perturb[1]) + 1)
        rhs_integral = case.integrands[arrow].truncated(case.order - 1).integral()
        checks.append(check_series(f"{case.label}-arrow{arrow}",
                                   image, rhs_integral, order=case.order))
    return Report(case.label, tuple(checks))


# fixed sampling grids; degenerate denominators are skipped per case
GRID_N = (1, 2, 3, 4)
GRID_P = (Fraction(-1), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))
GRID_ALPHA = (Fraction(1, 2), Fraction(2))


def appendix_cases(order: int) -> list[ChainCase]:
    cases = []
    for n in GRID_N:
        cases.append(chain_case(1, {"n": n}, order))
        cases.append(chain_case(2, {"n": n}, order))
    for p in GRID_P:
        cases.append(chain_case(3, {"p": p}, order))
        cases.append(chain_case(4, {"p": p}, order))
        cases.append(chain_case(5, {"p": p}, order))
        cases.append(chain_case(7, {"p": p}, order))
        for alpha in GRID_ALPHA:
            cases.append(chain_case(6, {"p": p, "alpha": alpha}, order))
            cases.append(chain_case(8, {"p": p, "alpha": alpha}, order))
    return cases


def verify_appendix(order: int) -> Report:
    return Report.merge("appendix-chains",
                        [verify_chain(c) for c in appendix_cases(order)])
