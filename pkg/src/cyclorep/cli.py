"""Command-line client.

All real work happens in the HTTP service; the CLI parses arguments, resolves
@file indirections, sends one request, and renders the response.  By default
it talks to the service in-process (no socket, no daemon); --server URL points
it at a running instance instead.

Exit codes: 0 success, 2 usage error, 3 parse error, 4 domain/capacity/IO
error.  Output is deterministic: identical argv produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import base64
import sys
import warnings

from .numtheory import is_prime

_POLY_ARG_HELP = "polynomial text, or @path to read it from a file"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclorep",
        description="cyclotomic-aware polynomial representations",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="base URL of a running service (default: in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="print the k-th cyclotomic polynomial")
    p.add_argument("k", type=int)
    p.add_argument("--stats", action="store_true", help="append degree, height, terms")

    p = sub.add_parser("c", help="print x^n-1")
    p.add_argument("n", type=int)
    p.add_argument("--stats", action="store_true", help="append degree, height, terms")

    p = sub.add_parser("factor", help="factor a polynomial")
    p.add_argument("input", help=_POLY_ARG_HELP)
    p.add_argument(
        "--vocab",
        choices=("plain", "phi", "c"),
        default="phi",
        help="output vocabulary (default: phi)",
    )
    p.add_argument(
        "--squarefree-only",
        action="store_true",
        help="stop at the square-free decomposition (plain vocabulary only)",
    )

    p = sub.add_parser("detect", help="decide whether a polynomial is cyclotomic")
    p.add_argument("input", help=_POLY_ARG_HELP)

    for name, help_text in (
        ("size", "measure a representation and compare with the formula value"),
        ("encode", "serialize a representation to a .cprep blob"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help=_POLY_ARG_HELP + ", or a factorization text")
        p.add_argument(
            "--vocab",
            choices=("dense", "sparse", "plain", "phi", "c"),
            required=True,
        )
        p.add_argument("-N", type=int, default=16, help="degree/count field width (default 16)")
        p.add_argument("-K", type=int, default=16, help="coefficient field width (default 16)")
        p.add_argument(
            "--inner",
            choices=("dense", "sparse"),
            default="sparse",
            help="layout of explicit polynomials inside factorizations",
        )
        if name == "encode":
            p.add_argument("--out", required=True, metavar="PATH", help="output .cprep path")

    p = sub.add_parser("decode", help="print the value stored in a .cprep blob")
    p.add_argument("path", help="path of the blob to read")

    p = sub.add_parser("table", help="reproduce one of the three tables")
    p.add_argument("which", type=int, choices=(1, 2, 3))
    p.add_argument("--max", type=int, dest="max_k", help="table 1: scan Phi_k for k <= MAX")
    p.add_argument("--n", type=int, help="table 2: sizes for x^n-1")
    p.add_argument("--p", type=int, help="table 3: first prime")
    p.add_argument("--q", type=int, help="table 3: second prime")
    p.add_argument("-N", type=int, default=16, help="degree/count field width (default 16)")
    p.add_argument("-K", type=int, default=16, help="coefficient field width (default 16)")
    p.add_argument("--csv", action="store_true", help="comma-separated output")

    return parser


class _Client:
    """Minimal POST/GET wrapper over either transport."""

    def __init__(self, server: str | None):
        if server is None:
            with warnings.catch_warnings():
                # the test-client import warns about its own dependencies;
                # not actionable for CLI users
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

                from .service import app

                self._client = TestClient(app, raise_server_exceptions=False)
        else:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=600.0)

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        r = self._client.post(path, json=payload)
        try:
            body = r.json()
        except ValueError:
            body = {"error": {"kind": "internal", "message": r.text.strip()}}
        return r.status_code, body


def _fail(status_body: tuple[int, dict]) -> int:
    _, body = status_body
    err = body.get("error")
    if err is None:
        err = {"kind": "invalid-request", "message": str(body)}
    sys.stderr.write(f"cyclorep: {err['kind']}: {err['message']}\n")
    return 3 if err["kind"] == "parse" else 4


def _resolve_input(parser: argparse.ArgumentParser, text: str) -> str:
    if not text.startswith("@"):
        return text
    path = text[1:]
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read().strip()
    except OSError as exc:
        parser.error(f"cannot read {path}: {exc}")
        raise AssertionError("unreachable")


def _require_positive(parser: argparse.ArgumentParser, value: int, name: str) -> None:
    if value < 1:
        parser.error(f"{name} must be a positive integer, got {value}")


def _render_table(rows: list[dict], csv: bool) -> str:
    names = [name for name, _ in rows[0]["columns"]] if rows else []
    grid = [[str(v) for _, v in row["columns"]] for row in rows]
    if csv:
        lines = [",".join(names)]
        lines += [",".join(r) for r in grid]
        return "\n".join(lines)
    widths = [
        max(len(names[i]), max((len(r[i]) for r in grid), default=0))
        for i in range(len(names))
    ]
    lines = ["  ".join(n.ljust(w) for n, w in zip(names, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in grid]
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    client = _Client(args.server)

    if args.command in ("phi", "c"):
        value = args.k if args.command == "phi" else args.n
        _require_positive(parser, value, "k" if args.command == "phi" else "n")
        status, body = client.post(f"/{args.command}", {"k": value, "stats": args.stats})
        if status != 200:
            return _fail((status, body))
        print(body["text"])
        if args.stats:
            s = body["stats"]
            print(f"degree {s['degree']}, height {s['height']}, terms {s['terms']}")
        return 0

    if args.command == "factor":
        poly = _resolve_input(parser, args.input)
        status, body = client.post(
            "/factor",
            {"poly": poly, "vocab": args.vocab, "squarefree_only": args.squarefree_only},
        )
        if status != 200:
            return _fail((status, body))
        print(body["text"])
        return 0

    if args.command == "detect":
        poly = _resolve_input(parser, args.input)
        status, body = client.post("/detect", {"poly": poly})
        if status != 200:
            return _fail((status, body))
        print(body["line"])
        return 0

    if args.command in ("size", "encode"):
        _require_positive(parser, args.N, "-N")
        _require_positive(parser, args.K, "-K")
        text = _resolve_input(parser, args.input)
        payload = {
            "input": text,
            "vocab": args.vocab,
            "n_param": args.N,
            "k_param": args.K,
            "inner": args.inner,
        }
        status, body = client.post(f"/{args.command}", payload)
        if status != 200:
            return _fail((status, body))
        if args.command == "size":
            print(f"vocab: {body['layout']}")
            params = " ".join(f"{name}={v}" for name, v in body["parameters"])
            print(f"parameters: {params}")
            print(f"measured_bits: {body['measured_bits']}")
            formula = body["formula_bits"]
            print(f"formula_bits: {'-' if formula is None else formula}")
            return 0
        raw = base64.b64decode(body["blob_b64"])
        try:
            with open(args.out, "wb") as fh:
                fh.write(raw)
        except OSError as exc:
            sys.stderr.write(f"cyclorep: io: cannot write {args.out}: {exc}\n")
            return 4
        print(f"wrote {args.out} ({body['byte_length']} bytes, {body['body_bits']} body bits)")
        return 0

    if args.command == "decode":
        try:
            with open(args.path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            sys.stderr.write(f"cyclorep: io: cannot read {args.path}: {exc}\n")
            return 4
        status, body = client.post(
            "/decode", {"blob_b64": base64.b64encode(raw).decode("ascii")}
        )
        if status != 200:
            return _fail((status, body))
        print(body["text"])
        return 0

    # table
    _require_positive(parser, args.N, "-N")
    _require_positive(parser, args.K, "-K")
    payload = {"which": args.which, "n_param": args.N, "k_param": args.K}
    if args.which == 1:
        if args.max_k is None:
            parser.error("table 1 needs --max")
        _require_positive(parser, args.max_k, "--max")
        payload["max_k"] = args.max_k
    elif args.which == 2:
        if args.n is None:
            parser.error("table 2 needs --n")
        if args.n < 3:
            parser.error(f"table 2 needs --n >= 3, got {args.n}")
        payload["n"] = args.n
    else:
        if args.p is None or args.q is None:
            parser.error("table 3 needs --p and --q")
        for v, name in ((args.p, "--p"), (args.q, "--q")):
            if v < 2 or not is_prime(v):
                parser.error(f"{name} must be prime, got {v}")
        if args.p == args.q:
            parser.error("--p and --q must be distinct")
        payload["p"], payload["q"] = args.p, args.q
    status, body = client.post("/table", payload)
    if status != 200:
        return _fail((status, body))
    print(_render_table(body["rows"], args.csv))
    return 0


if __name__ == "__main__":
    sys.exit(main())
