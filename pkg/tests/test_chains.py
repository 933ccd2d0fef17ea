"""Appendix integral-chain verification."""

from fractions import Fraction

from fpslab.chains import base_series, chain_case, verify_appendix, verify_chain
from fpslab.series import (
    Series, compose, damped_delta, logarithm, power,
)


def test_base_series_round_trip():
    for p in (0, 1, Fraction(1, 2), -1):
        g = base_series(p, 12)
        assert compose(damped_delta(p, 12), g).same_to(Series.x(12))


def test_base_series_closed_forms():
    # p = 1: rev((1 - e^-x)) = -log(1-x)
    got = base_series(1, 12)
    want = -logarithm(Series.from_terms({0: 1, 1: -1}, 12))
    assert got.same_to(want)
    # p = 0: rev(x e^-x) solves g = x e^{g}
    g0 = base_series(0, 12)
    from fpslab.series import exponential
    assert g0.same_to(Series.x(12) * exponential(g0))


def test_chain1_first_arrow_is_the_inverse_sine_pair():
    rep = verify_chain(chain_case(1, {"n": 2}, 12))
    assert rep.passed, rep.failures()
    # arrow 1 at n=2 is the arcsin -> arctan image
    case = chain_case(1, {"n": 2}, 12)
    arcsin = power(Series.from_terms({0: 1, 2: -1}, 12),
                   Fraction(-1, 2)).integral()
    assert case.integrands[0].integral().same_to(arcsin, order=12)


def test_chain3_both_arrows():
    rep = verify_chain(chain_case(3, {"p": 2}, 12))
    assert rep.passed, rep.failures()


def test_chain8_sampled():
    rep = verify_chain(chain_case(8, {"p": 1, "alpha": Fraction(1, 2)}, 12))
    assert rep.passed, rep.failures()


def test_all_chains_full_grid():
    rep = verify_appendix(12)
    assert len(rep.checks) == 65
    assert rep.passed, rep.failures()[:3]


def test_fault_injection_locates_arrow_and_exponent():
    case = chain_case(3, {"p": 2}, 12)
    rep = verify_chain(case, perturb=(2, 7))
    fails = rep.failures()
    assert len(fails) == 1
    assert fails[0].name.endswith("arrow2")
    assert "x^7" in fails[0].detail
    # every other arrow still passes
    assert all(c.passed for c in rep.checks if not c.name.endswith("arrow2"))
