"""Command-line front end: a thin client of the HTTP service.

By default requests are dispatched to the service in-process (no network,
no running server needed); ``--server URL`` or the POLARIS_SERVER
environment variable points the same commands at a remote instance.

Exit codes: 0 ok, 1 usage or transport failure, 2 parse error,
3 validation failure, 4 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4

_KIND_EXITS = {"parse": EXIT_PARSE, "validation": EXIT_VALIDATION, "internal": EXIT_INTERNAL}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        print(f"usage error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server.rstrip("/"), timeout=600.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

        from .service import app

        return TestClient(app)


def _read_graph(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fail_from_response(resp) -> int:
    try:
        detail = resp.json().get("detail", {})
    except ValueError:
        detail = {}
    if isinstance(detail, dict):
        kind = detail.get("kind", "")
        message = detail.get("message", resp.text)
        for key in ("violations",):
            if key in detail:
                message += "\n" + "\n".join(f"  - {v}" for v in detail[key])
        print(message, file=sys.stderr)
        return _KIND_EXITS.get(kind, EXIT_USAGE)
    print(str(detail), file=sys.stderr)
    return EXIT_USAGE


def _cmd_analyze(args) -> int:
    text = _read_graph(args.path)
    with _client(args.server) as client:
        resp = client.post(
            "/analyze",
            json={
                "graph": text,
                "realize": not args.no_realize,
                "limit_trees": args.limit_trees,
            },
        )
        if resp.status_code != 200:
            return _fail_from_response(resp)
        print(json.dumps(resp.json()["report"], indent=2))
    return EXIT_OK


def _cmd_check(args) -> int:
    with _client(args.server) as client:
        if args.fuzz:
            resp = client.post(
                "/fuzz", json={"seed": args.seed, "count": args.count, "size": args.size}
            )
            if resp.status_code != 200:
                return _fail_from_response(resp)
            body = resp.json()
            print(
                f"fuzz: {body['cases']} cases "
                f"({body['reduced_seen']} reduced, {body['nonreduced_seen']} non-reduced)"
            )
            if body["passed"]:
                print("all checks passed")
                return EXIT_OK
            failure = body["failure"]
            print(f"FAIL {failure['check']}: {failure['detail']}")
            print(f"case {failure['case_index']} (seed {failure['seed']})")
            print("minimized reproducer:")
            print(failure["reproducer"], end="")
            return EXIT_INTERNAL
        if not args.path:
            print("usage error: check needs a file or --fuzz", file=sys.stderr)
            return EXIT_USAGE
        text = _read_graph(args.path)
        resp = client.post("/check", json={"graph": text})
        if resp.status_code != 200:
            return _fail_from_response(resp)
        body = resp.json()
        for item in body["checks"]:
            mark = "ok  " if item["ok"] else "FAIL"
            suffix = f" ({item['detail']})" if item["detail"] else ""
            print(f"{mark} {item['name']}{suffix}")
        if body["passed"]:
            return EXIT_OK
        if body.get("reproducer"):
            print("minimized reproducer:")
            print(body["reproducer"], end="")
        return EXIT_INTERNAL


def _cmd_export(args) -> int:
    text = _read_graph(args.path)
    with _client(args.server) as client:
        resp = client.post("/export", json={"graph": text, "what": args.what})
        if resp.status_code != 200:
            return _fail_from_response(resp)
        print(resp.json()["dot"], end="")
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    with _client(args.server) as client:
        resp = client.get("/fixtures")
        if resp.status_code != 200:
            return _fail_from_response(resp)
        body = resp.json()
        if args.show:
            for fx in body["fixtures"]:
                if fx["name"] == args.show:
                    print(fx["graph"], end="")
                    return EXIT_OK
            print(f"unknown fixture {args.show}", file=sys.stderr)
            return EXIT_USAGE
        for fx in body["fixtures"]:
            print(f"{fx['name']}: {fx['description']}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("polaris.service:app", host=args.host, port=args.port)
    return EXIT_OK


def _default_seed() -> int:
    env = os.environ.get("POLARIS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"ignoring non-integer POLARIS_SEED={env!r}", file=sys.stderr)
    return 42


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polaris", description=__doc__)
    parser.add_argument("--server", default=os.environ.get("POLARIS_SERVER"))
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full report for one graph file")
    p_analyze.add_argument("path")
    p_analyze.add_argument("--no-realize", action="store_true")
    p_analyze.add_argument("--limit-trees", choices=["one", "all"], default="one")
    p_analyze.set_defaults(fn=_cmd_analyze)

    p_check = sub.add_parser("check", help="run the invariant suite")
    p_check.add_argument("path", nargs="?")
    p_check.add_argument("--fuzz", action="store_true")
    p_check.add_argument("--seed", type=int, default=_default_seed())
    p_check.add_argument("--count", type=int, default=200)
    p_check.add_argument("--size", type=int, default=12)
    p_check.set_defaults(fn=_cmd_check)

    p_export = sub.add_parser("export", help="DOT export")
    p_export.add_argument("path")
    p_export.add_argument("--what", choices=["graph", "limit-tree", "scott"], required=True)
    p_export.set_defaults(fn=_cmd_export)

    p_fixtures = sub.add_parser("fixtures", help="list built-in fixture graphs")
    p_fixtures.add_argument("--list", action="store_true", default=True)
    p_fixtures.add_argument("--show", metavar="NAME")
    p_fixtures.set_defaults(fn=_cmd_fixtures)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(fn=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except Exception as exc:
        import httpx

        if isinstance(exc, (httpx.HTTPError, ConnectionError, OSError)):
            print(f"transport failure: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
