"""Service layer: the operations behind the API endpoints and the CLI.

Both the FastAPI handlers and the CLI's local mode call these functions;
the CLI's remote mode reaches the same logic over HTTP.
"""

from __future__ import annotations

from fractions import Fraction

from . import eigen, jsonio
from .binomial import continuation_from_series, exp_integral_family, family_from_series
from .alphaexpr import adapted_log
from .errors import ConfigError
from .opcalc import stirling_first
from .report import Report
from .rings import rat_str
from .schemas import (
    CheckModel, CoeffsRequest, CoeffsResponse, ListResponse, TargetInfo,
    VerifyRequest, VerifyResponse,
)
from .series import (
    Series, inverse_dlog, inverse_dlog_preimage, reversion,
    reverted_inverse_dlog,
)
from .suites import run_suite, suite_names


def _param(params: dict, name: str) -> Fraction:
    if name not in params:
        raise ConfigError(f"missing required parameter {name!r}")
    try:
        return Fraction(str(params[name]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"parameter {name!r}: {exc}") from exc


def _int_param(params: dict, name: str) -> int:
    v = _param(params, name)
    if v.denominator != 1:
        raise ConfigError(f"parameter {name!r} must be an integer")
    return int(v)


def _series_arg(req: CoeffsRequest) -> Series:
    if req.series is None:
        raise ConfigError(f"target {req.target!r} needs a --series input")
    return jsonio.parse_series(req.series)


def _series_result(s: Series) -> dict:
    return jsonio.series_payload(s)


def _target_tf(req):
    return _series_result(inverse_dlog(_series_arg(req)))


def _target_tinv(req):
    return _series_result(inverse_dlog_preimage(_series_arg(req)))


def _target_qinv(req):
    return _series_result(reversion(_series_arg(req)))


def _target_qtq(req):
    return _series_result(reverted_inverse_dlog(_series_arg(req)))


def _target_fn(req):
    sol = eigen.eigen_series(_int_param(req.params, "n"),
                             _param(req.params, "A"), req.order)
    return _series_result(sol.f)


def _target_fn_recip(req):
    sol = eigen.eigen_series(_int_param(req.params, "n"),
                             _param(req.params, "A"), req.order)
    return _series_result(eigen.eigen_reciprocal(sol).truncated(req.order))


def _target_phi(req):
    return _series_result(eigen.phi_series(_param(req.params, "p"),
                                           req.order).series)


def _target_phi0(req):
    return _series_result(eigen.phi_zero_series(req.order))


def _target_psi(req):
    return _series_result(eigen.psi_series(req.order))


def _target_lambertw(req):
    return _series_result(eigen.lambert_w(req.order))


def _target_theta(req):
    return _series_result(eigen.elliptic_sine(_param(req.params, "m"),
                                              req.order).series)


def _target_nu(req):
    n = _int_param(req.params, "n")
    fam = exp_integral_family(n)
    return jsonio.poly_payload(fam.polynomial(n), "alpha_poly")


def _target_an(req):
    psi = eigen.psi_series(req.order)
    return [rat_str(psi.coeff(k)) for k in range(1, req.order + 1)]


def _target_pn(req):
    f = _series_arg(req)
    n = _int_param(req.params, "n")
    fam = family_from_series(f, n)
    return jsonio.poly_payload(fam.polynomial(n), "alpha_poly")


def _target_ps(req):
    f = _series_arg(req)
    cont = continuation_from_series(f, req.order)
    return jsonio.alpha_expr_payload(cont.ps)


def _target_lng(req):
    g = _series_arg(req)
    return jsonio.alpha_expr_payload(adapted_log(g, req.order))


def _target_stirling(req):
    return rat_str(stirling_first(_int_param(req.params, "n"),
                                  _int_param(req.params, "k")))


TARGETS = {
    "tf": (_target_tf, [], True, "f/f' of the input series"),
    "tinv": (_target_tinv, [], True, "the g with g/g' = input"),
    "qinv": (_target_qinv, [], True, "compositional inverse of the input"),
    "qtq": (_target_qtq, [], True, "reversion-conjugated f/f' of the input"),
    "fn": (_target_fn, ["n", "A"], False, "rescaling-equation solution"),
    "fn-recip": (_target_fn_recip, ["n", "A"], False,
                 "x/f for the rescaling-equation solution"),
    "phi": (_target_phi, ["p"], False, "exponent-kernel series at p"),
    "phi0": (_target_phi0, [], False, "exponent kernel at the p=0 endpoint"),
    "psi": (_target_psi, [], False,
            "reverted preimage of x*exp(-x)"),
    "lambertw": (_target_lambertw, [], False, "inverse of x*exp(x)"),
    "theta": (_target_theta, ["m"], False,
              "odd elliptic-sine series at squared modulus m"),
    "nu": (_target_nu, ["n"], False, "exp-integral family polynomial"),
    "an": (_target_an, [], False,
           "coefficients of the reverted preimage of x*exp(-x)"),
    "pn": (_target_pn, ["n"], True, "family polynomial of the input series"),
    "ps": (_target_ps, [], True,
           "canonical index continuation of the input series"),
    "lng": (_target_lng, [], True, "adapted logarithm of the input series"),
    "stirling": (_target_stirling, ["n", "k"], False,
                 "signed Stirling number of the first kind"),
}


def compute_coeffs(req: CoeffsRequest) -> CoeffsResponse:
    if req.target not in TARGETS:
        raise ConfigError(
            f"unknown target {req.target!r}; valid: {', '.join(TARGETS)}")
    handler = TARGETS[req.target][0]
    return CoeffsResponse(target=req.target, order=req.order,
                          result=handler(req))


def run_verify(req: VerifyRequest) -> VerifyResponse:
    report: Report = run_suite(req.suite, req.order, parallel=req.parallel)
    return VerifyResponse(
        suite=req.suite,
        order=req.order,
        passed=report.passed,
        checks=[CheckModel(name=c.name, passed=c.passed, detail=c.detail)
                for c in report.checks])


def list_capabilities() -> ListResponse:
    targets = [TargetInfo(name=name, params=meta[1], needs_series=meta[2],
                          description=meta[3])
               for name, meta in TARGETS.items()]
    return ListResponse(targets=targets, suites=suite_names())
