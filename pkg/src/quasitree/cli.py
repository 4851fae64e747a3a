"""Command line front end: a thin client over the in-process service.

Every subcommand posts to the corresponding endpoint through an ASGI
transport (no socket) and maps the reply status to an exit code:

    0  success
    1  usage error or malformed input
    2  precondition rejection
    3  verification failure, which always means a bug

Output is canonical JSON (sorted keys, fixed separators) so identical
inputs and --seed produce byte-identical runs.  `gen` prints one instance
per line; --format dot switches graph-shaped results to DOT; --trace sends
line-delimited search events to stderr; --quiet drops stdout entirely.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .io import (
    canonical_dumps,
    hypergraph_from_dict,
    hypergraph_dot,
    load_json,
    multigraph_dot,
    multigraph_from_dict,
    quasigraph_from_dict,
)
from .service import create_app

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REJECTED = 2
EXIT_VERIFICATION = 3

_STATUS_EXIT = {
    "ok": EXIT_OK,
    "rejected": EXIT_REJECTED,
    "verification-failure": EXIT_VERIFICATION,
    "error": EXIT_USAGE,
}

_app = None


def _service():
    global _app
    if _app is None:
        _app = create_app()
    return _app


def _post(path: str, payload: dict) -> tuple[int, dict]:
    async def go():
        transport = httpx.ASGITransport(app=_service())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://quasitree"
        ) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(go())


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    shared = _Parser(add_help=False)
    shared.add_argument("--seed", type=int, default=0, help="generator seed")
    shared.add_argument(
        "--format",
        "--emit",
        dest="format",
        choices=("json", "dot"),
        default="json",
        help="result rendering",
    )
    shared.add_argument(
        "--max-iters",
        dest="max_iters",
        type=int,
        default=None,
        help="override the quasitree search iteration cap",
    )
    shared.add_argument("--quiet", action="store_true", help="suppress stdout")
    shared.add_argument(
        "--trace",
        action="store_true",
        help="line-delimited JSON search events on stderr",
    )

    parser = _Parser(prog="quasitree", description="tight quasitree toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("check", parents=[shared], help="classify a quasigraph")
    p.add_argument("--input", required=True, help="hypergraph JSON file")
    p.add_argument("--quasigraph", required=True, help="quasigraph JSON file")

    p = sub.add_parser(
        "find-quasitree", parents=[shared], help="search for a tight quasitree"
    )
    p.add_argument("--input", required=True, help="hypergraph JSON file")

    p = sub.add_parser(
        "hamilton", parents=[shared], help="Hamilton cycle of the line graph"
    )
    p.add_argument("--input", required=True, help="multigraph JSON file")
    p.add_argument(
        "--path",
        nargs=2,
        metavar=("E1", "E2"),
        default=None,
        help="two edge ids: find a Hamilton path between them instead",
    )

    p = sub.add_parser(
        "hamilton-path",
        parents=[shared],
        help="Hamilton path of the line graph between two edges",
    )
    p.add_argument("--input", required=True, help="multigraph JSON file")
    p.add_argument("--ends", nargs=2, metavar=("E1", "E2"), required=True)

    p = sub.add_parser(
        "gen", parents=[shared], help="generate instances as JSON lines"
    )
    p.add_argument("--kind", choices=("hypergraph", "graph"), required=True)
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--constraints", default="none")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-edges", dest="max_edges", type=int, default=12)
    p.add_argument("--attempts", type=int, default=20000)
    p.add_argument("--output", default=None, help="write the lines to a file")

    p = sub.add_parser(
        "oracle", parents=[shared], help="brute-force reference answers"
    )
    p.add_argument("--kind", choices=("tight-quasitrees", "hamilton"), required=True)
    p.add_argument("--input", required=True, help="instance JSON file")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--mode", choices=("cycle", "path"), default="cycle")
    p.add_argument("--ends", nargs=2, metavar=("E1", "E2"), default=None)

    p = sub.add_parser("serve", parents=[shared], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _eprint(message: str) -> None:
    print(message, file=sys.stderr)


def _finish(args, code: int, body, dot=None) -> int:
    if code == 422:
        detail = body.get("detail") if isinstance(body, dict) else body
        _eprint(f"quasitree: invalid request: {canonical_dumps(detail)}")
        return EXIT_USAGE
    if code != 200:
        _eprint(f"quasitree: service error: HTTP {code}")
        return EXIT_USAGE
    status = body.get("status", "error")
    exit_code = _STATUS_EXIT.get(status, EXIT_USAGE)
    if args.trace:
        for event in body.get("trace") or ():
            _eprint(canonical_dumps(event))
    if args.quiet:
        return exit_code
    result = body.get("result")
    if status == "ok" and args.format == "dot" and dot is not None:
        sys.stdout.write(dot(result or {}))
        return exit_code
    flat = {"status": status}
    for key in ("stage", "reason"):
        if body.get(key):
            flat[key] = body[key]
    if status == "ok" and isinstance(result, dict):
        flat.update(result)
    print(canonical_dumps(flat))
    return exit_code


def _cmd_check(args) -> int:
    hobj = load_json(args.input)
    qobj = load_json(args.quasigraph)
    payload = {"hypergraph": hobj, "quasigraph": qobj}
    title = Path(args.input).stem

    def dot(_result):
        host = hypergraph_from_dict(hobj)
        pi = quasigraph_from_dict(qobj, host=host)
        return hypergraph_dot(host, pi, title=title)

    return _finish(args, *_post("/check", payload), dot=dot)


def _cmd_find_quasitree(args) -> int:
    hobj = load_json(args.input)
    payload = {
        "hypergraph": hobj,
        "max_iterations": args.max_iters,
        "trace": args.trace,
    }
    title = Path(args.input).stem

    def dot(result):
        pi = quasigraph_from_dict(result["quasigraph"])
        return hypergraph_dot(pi.host, pi, title=title)

    return _finish(args, *_post("/find-quasitree", payload), dot=dot)


def _graph_dot(gobj, title: str):
    def dot(result):
        g = multigraph_from_dict(gobj)
        return multigraph_dot(g, highlight=set(result.get("trail") or ()), title=title)

    return dot


def _cmd_hamilton(args) -> int:
    gobj = load_json(args.input)
    payload = {"multigraph": gobj, "path": args.path}
    dot = _graph_dot(gobj, Path(args.input).stem)
    return _finish(args, *_post("/hamilton", payload), dot=dot)


def _cmd_hamilton_path(args) -> int:
    gobj = load_json(args.input)
    payload = {"multigraph": gobj, "e1": args.ends[0], "e2": args.ends[1]}
    dot = _graph_dot(gobj, Path(args.input).stem)
    return _finish(args, *_post("/hamilton-path", payload), dot=dot)


def _cmd_gen(args) -> int:
    if args.format == "dot":
        raise _UsageError("gen emits JSON lines; --format dot does not apply")
    payload = {
        "kind": args.kind,
        "n": args.n,
        "constraints": args.constraints,
        "seed": args.seed,
        "count": args.count,
        "max_edges": args.max_edges,
        "attempts": args.attempts,
    }
    code, body = _post("/gen", payload)
    if code != 200 or body.get("status") != "ok":
        return _finish(args, code, body)
    lines = [canonical_dumps(inst) for inst in body["result"]["instances"]]
    text = "".join(line + "\n" for line in lines)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    elif not args.quiet:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.format == "dot":
        raise _UsageError("oracle emits JSON; --format dot does not apply")
    payload = {
        "kind": args.kind,
        "limit": args.limit,
        "mode": args.mode,
        "ends": args.ends,
    }
    obj = load_json(args.input)
    if args.kind == "tight-quasitrees":
        payload["hypergraph"] = obj
    else:
        payload["multigraph"] = obj
    return _finish(args, *_post("/oracle", payload))


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run(_service(), host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "find-quasitree": _cmd_find_quasitree,
    "hamilton": _cmd_hamilton,
    "hamilton-path": _cmd_hamilton_path,
    "gen": _cmd_gen,
    "oracle": _cmd_oracle,
    "serve": _cmd_serve,
}


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _eprint(f"quasitree: error: {exc}")
        return EXIT_USAGE
    except SystemExit as exc:  # --help exits through argparse
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        _eprint(f"quasitree: error: {exc}")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        _eprint(f"quasitree: error: {exc}")
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        _eprint(f"quasitree: error: invalid JSON: {exc}")
        return EXIT_USAGE


def main(argv=None) -> None:
    raise SystemExit(dispatch(sys.argv[1:] if argv is None else argv))
