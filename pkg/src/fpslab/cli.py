"""Command-line front end: a thin client over the service layer.

By default requests are served in-process; `--server URL` sends the same
request/response payloads to a running instance over HTTP instead.

Exit status: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import httpx

from . import service
from .errors import ConfigError, SeriesLabError
from .jsonio import dumps
from .rings import Poly
from .schemas import (
    CoeffsRequest, CoeffsResponse, DEFAULT_COEFFS_ORDER, DEFAULT_VERIFY_ORDER,
    ListResponse, VerifyRequest, VerifyResponse,
)


class LocalClient:
    def coeffs(self, req: CoeffsRequest) -> CoeffsResponse:
        return service.compute_coeffs(req)

    def verify(self, req: VerifyRequest) -> VerifyResponse:
        return service.run_verify(req)

    def capabilities(self) -> ListResponse:
        return service.list_capabilities()


class RemoteClient:
    def __init__(self, base_url: str):
        self.base_url = base_url.rstrip("/")

    def _post(self, path: str, payload: dict, model):
        resp = httpx.post(f"{self.base_url}{path}", json=payload, timeout=600.0)
        self._raise_for_error(resp)
        return model.model_validate(resp.json())

    @staticmethod
    def _raise_for_error(resp: httpx.Response) -> None:
        if resp.status_code >= 400:
            try:
                body = resp.json()
                raise ConfigError(body.get("error", resp.text))
            except (ValueError, KeyError):
                raise ConfigError(f"server error {resp.status_code}: {resp.text}")

    def coeffs(self, req: CoeffsRequest) -> CoeffsResponse:
        return self._post("/coeffs", req.model_dump(), CoeffsResponse)

    def verify(self, req: VerifyRequest) -> VerifyResponse:
        return self._post("/verify", req.model_dump(), VerifyResponse)

    def capabilities(self) -> ListResponse:
        resp = httpx.get(f"{self.base_url}/list", timeout=60.0)
        self._raise_for_error(resp)
        return ListResponse.model_validate(resp.json())


def _color_enabled() -> bool:
    toggle = os.environ.get("FPSLAB_COLOR")
    if toggle is not None:
        return toggle not in ("0", "false", "no")
    return sys.stdout.isatty()


def _verdict(passed: bool) -> str:
    word = "PASS" if passed else "FAIL"
    if _color_enabled():
        code = "32" if passed else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _parse_params(pairs: list[str]) -> dict[str, str]:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--param expects name=value, got {pair!r}")
        name, value = pair.split("=", 1)
        out[name.strip()] = value.strip()
    return out


def _load_series(arg: str | None) -> dict | None:
    if arg is None:
        return None
    text = arg
    if arg.startswith("@"):
        try:
            with open(arg[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read series file: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"series is not valid JSON: {exc}") from exc


def _render_coeffs_text(resp: CoeffsResponse) -> str:
    result = resp.result
    lines = [f"target: {resp.target} (order {resp.order})"]
    if isinstance(result, dict) and "coefficients" in result:
        v = result["valuation"]
        for i, c in enumerate(result["coefficients"]):
            shown = c if isinstance(c, str) else Poly(
                c["s_poly"]).format("s")
            lines.append(f"  x^{v + i:<3d} {shown}")
    elif isinstance(result, dict) and "alpha_poly" in result:
        lines.append("  " + Poly(result["alpha_poly"]).format("a"))
    elif isinstance(result, dict) and "parts" in result:
        from .jsonio import parse_alpha_expr
        lines.append("  " + parse_alpha_expr(result).format())
    elif isinstance(result, list):
        lines.extend(f"  {item}" for item in result)
    else:
        lines.append(f"  {result}")
    return "\n".join(lines)


def _render_verify_text(resp: VerifyResponse) -> str:
    lines = []
    width = max((len(c.name) for c in resp.checks), default=0)
    for c in resp.checks:
        line = f"{_verdict(c.passed)}  {c.name:<{width}}"
        if c.detail:
            line += f"  {c.detail}"
        lines.append(line)
    passed = sum(c.passed for c in resp.checks)
    lines.append(f"{passed}/{len(resp.checks)} checks passed "
                 f"(suite {resp.suite}, order {resp.order})")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpslab",
        description="Exact formal power series laboratory.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service "
                             "(default: run in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="compute a named series/polynomial")
    coeffs.add_argument("--target", required=True)
    coeffs.add_argument("--order", type=int, default=DEFAULT_COEFFS_ORDER)
    coeffs.add_argument("--param", action="append", default=[],
                        metavar="NAME=NUM/DEN")
    coeffs.add_argument("--series", default=None,
                        help="input series as inline JSON or @file")
    coeffs.add_argument("--format", choices=("json", "text"), default="text")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", required=True)
    verify.add_argument("--order", type=int, default=DEFAULT_VERIFY_ORDER)
    verify.add_argument("--format", choices=("json", "text"), default="text")
    verify.add_argument("--parallel", action="store_true")

    sub.add_parser("list", help="list targets and suites")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "format", "text") == "json"
    try:
        client = RemoteClient(args.server) if args.server else LocalClient()
        if args.command == "coeffs":
            req = CoeffsRequest(target=args.target, order=args.order,
                                params=_parse_params(args.param),
                                series=_load_series(args.series))
            resp = client.coeffs(req)
            if as_json:
                print(dumps(resp.result))
            else:
                print(_render_coeffs_text(resp))
            return 0
        if args.command == "verify":
            req = VerifyRequest(suite=args.suite, order=args.order,
                                parallel=args.parallel)
            resp = client.verify(req)
            if as_json:
                print(dumps(resp.model_dump()))
            else:
                print(_render_verify_text(resp))
            return 0 if resp.passed else 1
        if args.command == "list":
            caps = client.capabilities()
            print("targets:")
            for t in caps.targets:
                extras = []
                if t.params:
                    extras.append("params: " + ", ".join(t.params))
                if t.needs_series:
                    extras.append("needs --series")
                suffix = f" ({'; '.join(extras)})" if extras else ""
                print(f"  {t.name:<10s} {t.description}{suffix}")
            print("suites:")
            for s in caps.suites:
                print(f"  {s}")
            return 0
        if args.command == "serve":
            import uvicorn

            from .api import app
            uvicorn.run(app, host=args.host, port=args.port)
            return 0
        raise ConfigError(f"unknown command {args.command!r}")
    except SeriesLabError as exc:
        payload = {"error": str(exc), "kind": type(exc).__name__}
        if as_json:
            print(dumps(payload), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
