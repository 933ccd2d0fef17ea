"""Canonical JSON forms for series, polynomials, and asymptotic expressions.

Emission is canonical (fixed key order, compact separators, rationals as
lowest-terms strings), so parse -> emit is byte-identical on anything this
module emitted.
"""

from __future__ import annotations

import json

from .alphaexpr import AlphaExpr
from .errors import ConfigError
from .rings import POLY, RAT, Poly, rat, rat_str
from .series import Series


def poly_payload(p: Poly, key: str = "s_poly") -> dict:
    return {key: [rat_str(c) for c in p.coeffs]}


def parse_poly(payload: dict, key: str = "s_poly") -> Poly:
    if not isinstance(payload, dict) or key not in payload:
        raise ConfigError(f"expected a {{{key!r}: [...]}} object")
    return Poly(rat(c) for c in payload[key])


def _coeff_payload(c):
    if isinstance(c, Poly):
        return poly_payload(c)
    return rat_str(c)


def series_payload(s: Series, variable: str = "x") -> dict:
    return {
        "variable": variable,
        "valuation": s.shift,
        "order": s.order,
        "coefficients": [_coeff_payload(c) for c in s.coeffs],
    }


def parse_series(payload: dict) -> Series:
    if not isinstance(payload, dict):
        raise ConfigError("series payload must be a JSON object")
    try:
        valuation = int(payload["valuation"])
        order = int(payload["order"])
        raw = payload["coefficients"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed series payload: {exc}") from exc
    poly_ring = any(isinstance(c, dict) for c in raw)
    ring = POLY if poly_ring else RAT
    coeffs = [parse_poly(c) if isinstance(c, dict) else rat(c) for c in raw]
    try:
        return Series(ring, valuation, coeffs, order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def alpha_expr_payload(e: AlphaExpr) -> dict:
    parts = [{
        "log_power": 0,
        "exp_a": e.base_a,
        "exp_b": e.base_b,
        "tail": [poly_payload(c) for c in e.plain],
    }]
    if e.has_log:
        parts.append({
            "log_power": 1,
            "exp_a": e.base_a,
            "exp_b": e.base_b,
            "tail": [poly_payload(c) for c in e.logs],
        })
    return {"parts": parts, "depth": e.depth}


def parse_alpha_expr(payload: dict) -> AlphaExpr:
    try:
        depth = int(payload["depth"])
        parts = payload["parts"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed expression payload: {exc}") from exc
    plain = logs = None
    base = None
    for part in parts:
        tail = [parse_poly(c) for c in part["tail"]]
        here = (int(part["exp_a"]), int(part["exp_b"]))
        if base is not None and here != base:
            raise ConfigError("parts must share one exponent family")
        base = here
        if part["log_power"] == 0:
            plain = tail
        elif part["log_power"] == 1:
            logs = tail
        else:
            raise ConfigError("log_power must be 0 or 1")
    if base is None:
        raise ConfigError("expression payload has no parts")
    return AlphaExpr.build(base[0], base[1], plain or (), logs or (),
                           depth=depth)


def dumps(payload) -> str:
    return json.dumps(payload, separators=(",", ":"))
