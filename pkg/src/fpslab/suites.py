"""Named verification suites behind `verify`: every identity the package
implements, grouped the way the write-up presents them.

Each suite builds a list of independent case thunks (pure functions of the
requested order) and evaluates them sequentially or on a thread pool; the
report order is fixed by construction either way.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import random

from .binomial import (
    check_deformed_log_identities, check_dot_identities,
    check_reflection_family, check_reflection_identities,
    check_shift_structure, check_translation_property, check_alpha,
    continuation_from_series, reflection_cross_check,
)
from .chains import appendix_cases, verify_chain
from .eigen import (
    check_elliptic_doubling, check_endpoint_identities, check_eigen_displays,
    check_exp_transport, check_phi_index_laws, check_phi_kernel_equation,
    check_quartic_inverse_integrals, check_scaling_inverse_exp_integral,
    eigen_series, phi_series, phi_two_closed_form, phi_four_closed_form,
)
from .errors import ConfigError
from .opcalc import (
    check_combinatorial_reversion, check_commutator,
    check_operator_factorial_family, check_ordered_products,
    check_shift_factorial_identity, check_stirling_sums,
)
from .report import Check, Report, check_series
from .series import Series, damped_exponential, exp_minus_one, logarithm


def _random_normalized(rng: random.Random, order: int) -> Series:
    terms = {1: Fraction(1)}
    for e in range(2, order + 1):
        terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Series.from_terms(terms, order)


def _as_report(result) -> Report:
    if isinstance(result, Check):
        return Report(result.name, (result,))
    return result


def _run(cases, parallel: bool) -> Report:
    if parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda fn: fn(), cases))
    else:
        results = [fn() for fn in cases]
    return Report.merge("suite", [_as_report(r) for r in results])


def suite_section1(order: int) -> list:
    order = max(order, 6)
    cases = [
        lambda: check_series("phi2-closed-form",
                             phi_series(2, order).series,
                             phi_two_closed_form(order)),
        lambda: check_series("phi4-closed-form",
                             phi_series(4, order).series,
                             phi_four_closed_form(order)),
    ]
    for m in (0, 1, -1, Fraction(1, 4), 9):
        cases.append(lambda m=m: check_elliptic_doubling(m, order))
    for n in (1, 2, 3, 4, 5):
        for a in (1, Fraction(1, 2)):
            cases.append(lambda n=n, a=a: check_eigen_displays(n, a))
    cases.append(lambda: check_quartic_inverse_integrals(order))
    for n in (1, 2, 3, 4):
        cases.append(lambda n=n: check_scaling_inverse_exp_integral(
            n, Fraction(1, 2)))
    cases.append(lambda: check_endpoint_identities(order))
    for p in (1, 2, 3, 4):
        cases.append(lambda p=p: check_phi_index_laws(p, min(order, 12)))
    for p in (3, Fraction(1, 2)):
        cases.append(lambda p=p: check_phi_kernel_equation(
            phi_series(p, order)))
    def transport_case():
        f = eigen_series(1, Fraction(1, 3), order).f
        q = logarithm(f / Series.x(order))
        return check_exp_transport(q, 1, 1, order)
    cases.append(transport_case)
    return cases


def suite_section2(order: int) -> list:
    depth = max(order - 2, 4)
    cases = []
    rng = random.Random(20240915)
    for i in range(5):
        f = _random_normalized(rng, order + 2)
        cases.append(lambda f=f: check_dot_identities(f, order))
    for p, a in ((1, 0), (2, 1), (Fraction(1, 2), Fraction(-1, 3))):
        cases.append(lambda p=p, a=a: check_deformed_log_identities(p, a, depth))
        cases.append(lambda p=p, a=a: check_reflection_identities(p, a, depth))
    def remark_reflection():
        from .alphaexpr import AlphaExpr
        f = Series.from_terms({1: 1, 2: -1}, order + 2)
        cont = continuation_from_series(f, order)
        return check_alpha("self-reciprocal-reflection", cont.reflected(),
                           AlphaExpr.monomial(1, -2, order) * cont.ps,
                           levels=order - 1)
    cases.append(remark_reflection)
    for p, a, b in ((1, 1, -1), (2, Fraction(1, 3), Fraction(-1, 2))):
        cases.append(lambda p=p, a=a, b=b: check_reflection_family(p, a, b, depth))
    def negative_control():
        res = reflection_cross_check("x-vs-expm1", exp_minus_one(order + 2),
                                     Series.x(order + 2), depth)
        return Check("reflection-negative-control", not res.passed,
                     "control pair unexpectedly satisfies the reflection")
    cases.append(negative_control)
    cases.append(lambda: check_shift_structure(6, depth, 8))
    return cases


def suite_section3(order: int) -> list:
    work = order + 2
    fs = (exp_minus_one(work), Series.from_terms({1: 1, 2: 1}, work),
          damped_exponential(work))
    cases = []
    for f in fs:
        cases.append(lambda f=f: check_commutator(f, 8))
        cases.append(lambda f=f: check_operator_factorial_family(f, 5))
        cases.append(lambda f=f: check_ordered_products(f, 5))
    cases.append(lambda: check_stirling_sums(min(order, 12), min(order + 2, 14)))
    cases.append(lambda: check_combinatorial_reversion(
        damped_exponential(work), order))
    rng = random.Random(987)
    c = _random_normalized(rng, order)
    cases.append(lambda: check_combinatorial_reversion(c, order))
    cases.append(lambda: check_translation_property(8))
    return cases


def suite_appendix_a(order: int) -> list:
    return [lambda case=case: verify_chain(case)
            for case in appendix_cases(order)]


def suite_appendix_b(order: int) -> list:
    cases = []
    for p, a in ((1, Fraction(1, 2)), (2, Fraction(-1, 3))):
        cases.append(lambda p=p, a=a: check_shift_factorial_identity(
            p, a, 4, 10))
    # stated degeneration at p = 0: the exact case plus small-p samples
    for p in (0, Fraction(1, 10), Fraction(1, 100)):
        cases.append(lambda p=p: check_shift_factorial_identity(
            p, Fraction(1, 2), 2, 6))
    return cases


SUITES = {
    "section1": suite_section1,
    "section2": suite_section2,
    "section3": suite_section3,
    "appendix-a": suite_appendix_a,
    "appendix-b": suite_appendix_b,
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, order: int, parallel: bool = False) -> Report:
    if name == "all":
        reports = [run_suite(n, order, parallel).prefixed(n) for n in SUITES]
        return Report.merge("all", reports)
    if name not in SUITES:
        raise ConfigError(
            f"unknown suite {name!r}; valid: {', '.join(suite_names())}")
    report = _run(SUITES[name](order), parallel)
    return Report(name, report.checks)
