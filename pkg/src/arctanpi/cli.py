"""Command-line client for the computation service.

Every subcommand builds a request, sends it through the HTTP surface (an
in-process ASGI transport by default, or a remote server via ``--server``)
and renders the JSON response as text, JSON or CSV.

Exit codes: 0 success, 2 usage error, 3 numeric or I/O failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import sys
from typing import Any, Optional

import httpx

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4


class ServiceClient:
    """Minimal JSON-over-HTTP client; in-process unless a server is given."""

    def __init__(self, server: Optional[str] = None, timeout: Optional[float] = None):
        self.server = server
        self.timeout = timeout

    def request(self, method: str, path: str, payload: Optional[dict] = None) -> tuple[int, dict]:
        if self.server is not None:
            with httpx.Client(base_url=self.server, timeout=self.timeout) as client:
                response = client.request(method, path, json=payload)
                return response.status_code, response.json()

        async def _go() -> tuple[int, dict]:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://arctanpi.local", timeout=self.timeout
            ) as client:
                response = await client.request(method, path, json=payload)
                return response.status_code, response.json()

        return asyncio.run(_go())

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        return self.request("POST", path, payload)

    def get(self, path: str) -> tuple[int, dict]:
        return self.request("GET", path)


def _flat_fields(payload: dict) -> dict[str, Any]:
    """One-level flattening: parameters.* spread, containers JSON-encoded."""
    flat: dict[str, Any] = {}
    for key, value in payload.items():
        if key == "parameters" and isinstance(value, dict):
            for pk, pv in value.items():
                if pv is not None:
                    flat[pk] = pv
        elif isinstance(value, (list, dict)):
            flat[key] = json.dumps(value)
        elif value is not None:
            flat[key] = value
    return flat


def _emit(text: str, out_path: Optional[str]) -> int:
    if out_path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return EXIT_OK
    try:
        with open(out_path, "w", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _csv_text(columns: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def _render_scalar(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    flat = _flat_fields(payload)
    if fmt == "csv":
        return _csv_text(list(flat.keys()), [list(flat.values())])
    width = max(len(k) for k in flat)
    return "\n".join(f"{k.rjust(width)}: {v}" for k, v in flat.items())


def _render_table(payload: dict, fmt: str, columns: list[str], rows: list[list[Any]]) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv_text(columns, rows)
    widths = [
        max(len(str(c)), max((len(str(r[i])) for r in rows), default=0))
        for i, c in enumerate(columns)
    ]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(str(v).ljust(w) for v, w in zip(row, widths)) for row in rows]
    return "\n".join(lines)


def _fail(status: int, body: dict) -> int:
    detail = body.get("detail", body)
    print(f"error: {detail}", file=sys.stderr)
    if 400 <= status < 500:
        return EXIT_USAGE
    return EXIT_NUMERIC


def _common_flags(parser: argparse.ArgumentParser, digits_default: int = 30) -> None:
    parser.add_argument("--digits", type=int, default=digits_default,
                        help=f"significant digits (default {digits_default})")
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text",
                        help="output format (default text)")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")


def _cmd_pi(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    payload = {"method": args.method, "L": args.L, "digits": args.digits}
    if args.x is not None:
        payload["x"] = args.x
    status, body = client.post("/pi", payload)
    if status != 200:
        return _fail(status, body)
    return _emit(_render_scalar(body, args.format), args.out)


def _cmd_arctan(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    status, body = client.post(
        "/arctan", {"x": args.x, "L": args.L, "digits": args.digits}
    )
    if status != 200:
        return _fail(status, body)
    return _emit(_render_scalar(body, args.format), args.out)


def _cmd_erf(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    status, body = client.post("/erf", {"x": args.x, "L": args.L, "digits": args.digits})
    if status != 200:
        return _fail(status, body)
    return _emit(_render_scalar(body, args.format), args.out)


def _cmd_sinc(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    status, body = client.post("/sinc", {"x": args.x, "L": args.L, "rule": args.rule})
    if status != 200:
        return _fail(status, body)
    return _emit(_render_scalar(body, args.format), args.out)


def _cmd_figure(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    payload: dict[str, Any] = {
        "which": args.which,
        "points": args.points,
        "digits": args.digits,
    }
    if args.L:
        payload["L_list"] = args.L
    if args.x_min is not None:
        payload["x_min"] = args.x_min
    if args.x_max is not None:
        payload["x_max"] = args.x_max
    status, body = client.post("/figure", payload)
    if status != 200:
        return _fail(status, body)
    if args.format == "json":
        return _emit(json.dumps(body, indent=2), args.out)
    return _emit(_csv_text(body["columns"], body["rows"]), args.out)


def _cmd_converge(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    status, body = client.post(
        "/converge", {"x": args.x, "Ls": args.Ls, "digits": args.digits}
    )
    if status != 200:
        return _fail(status, body)
    columns = ["L", "x", "value", "coinciding", "abs_error", "order_to_next"]
    orders = body["orders"] + [""]
    rows = [
        [r["L"], r["x"], r["value"], r["coinciding"], r["abs_error"], orders[i]]
        for i, r in enumerate(body["records"])
    ]
    return _emit(_render_table(body, args.format, columns, rows), args.out)


def _cmd_formulas(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server)
    if args.action == "list":
        status, body = client.get("/formulas")
        if status != 200:
            return _fail(status, body)
        columns = ["name", "terms", "verified"]
        rows = [
            [f["name"], " + ".join(f"{c}*arctan({b})" for c, b in f["terms"]), f["verified"]]
            for f in body["formulas"]
        ]
        return _emit(_render_table(body, args.format, columns, rows), args.out)
    # verify
    if args.digits < 10:
        print("error: --digits must be >= 10 for verification", file=sys.stderr)
        return EXIT_USAGE
    status, body = client.post("/formulas/verify", {"digits": args.digits})
    if status != 200:
        return _fail(status, body)
    columns = ["name", "ok"]
    rows = [[r["name"], r["ok"]] for r in body["results"]]
    code = _emit(_render_table(body, args.format, columns, rows), args.out)
    if code != EXIT_OK:
        return code
    if not body["all_ok"]:
        failed = ", ".join(r["name"] for r in body["results"] if not r["ok"])
        print(f"verification failed: {failed}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    client = ServiceClient(args.server, timeout=None)
    status, body = client.post(
        "/bench",
        {"L": args.L, "kernel": args.kernel, "chunk": args.chunk, "threads": args.threads},
    )
    if status != 200:
        return _fail(status, body)
    return _emit(_render_scalar(body, args.format), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arctanpi",
        description="Compute pi and arctangent values from rational series, "
        "verify Machin-type formulas, emit figure/convergence data and "
        "benchmark summation kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi", help="compute pi by one of the series methods")
    p.add_argument("--method", default="direct",
                   help="direct | asym | formula:<name> (default direct)")
    p.add_argument("--L", type=int, required=True, help="truncation order")
    p.add_argument("--x", default=None, help="rational argument p/q (asym only)")
    _common_flags(p)
    p.set_defaults(func=_cmd_pi)

    p = sub.add_parser("arctan", help="arctangent series value vs the reference")
    p.add_argument("--x", required=True, help="argument: rational p/q or decimal")
    p.add_argument("--L", type=int, required=True)
    _common_flags(p)
    p.set_defaults(func=_cmd_arctan)

    p = sub.add_parser("erf", help="Gaussian-sum erf value vs the reference")
    p.add_argument("--x", required=True, help="argument (decimal)")
    p.add_argument("--L", type=int, required=True)
    _common_flags(p)
    p.set_defaults(func=_cmd_erf)

    p = sub.add_parser("sinc", help="cosine expansions of sinc vs sin(x)/x")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--rule", choices=("midpoint", "trapezoid", "simpson", "all"),
                   default="all")
    _common_flags(p)
    p.set_defaults(func=_cmd_sinc)

    p = sub.add_parser("figure", help="emit figure data as CSV")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--L", type=int, action="append", default=None,
                   help="truncation order (repeatable; figure defaults apply)")
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--x-min", type=float, default=None, dest="x_min")
    p.add_argument("--x-max", type=float, default=None, dest="x_max")
    _common_flags(p)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("converge", help="convergence table over ascending L")
    p.add_argument("--x", default="1", help="rational argument p/q (default 1)")
    p.add_argument("--Ls", type=lambda s: [int(v) for v in s.split(",")],
                   default=[100, 1000, 10000],
                   help="comma-separated ascending orders (default 100,1000,10000)")
    _common_flags(p, digits_default=50)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("formulas", help="list or verify the formula registry")
    p.add_argument("action", choices=("list", "verify"))
    _common_flags(p, digits_default=50)
    p.set_defaults(func=_cmd_formulas)

    p = sub.add_parser("bench", help="benchmark binary64 summation kernels")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--kernel", choices=("sequential", "compensated", "pairwise"),
                   default="pairwise")
    p.add_argument("--chunk", type=int, default=1 << 20)
    p.add_argument("--threads", type=int, default=1)
    _common_flags(p)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", 1) < 1:
        parser.error("--digits must be >= 1")
    try:
        return args.func(args)
    except httpx.HTTPError as exc:
        print(f"error: service unreachable: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
