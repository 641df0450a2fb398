"""Command-line front end.

Every subcommand is a thin client over the HTTP service in api.py: the
arguments become one POST body, the response becomes the report on
stdout and the exit code.  By default the app is called in-process
(no socket); --server points the same client at a remote `ivmat serve`.

Exit codes: 0 success (member/agreement/all checks pass), 1 negative
verdict (non-member, non-agreement), 2 runtime error, 64 usage error,
70 a computation contradicted an asserted identity.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

EX_OK = 0
EX_NEGATIVE = 1
EX_ERROR = 2
EX_USAGE = 64
EX_CONTRADICTION = 70


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _post(path: str, payload: dict, server: str | None):
    """One request against the service; in-process unless --server."""
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            r = client.post(path, json=payload)
            return r.status_code, r.json()

    async def go():
        from .api import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://service",
                                     timeout=None) as client:
            r = await client.post(path, json=payload)
            return r.status_code, r.json()

    return asyncio.run(go())


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _emit(body: dict, fmt: str) -> None:
    if fmt == "text":
        print("\n".join(_render_text(body)))
    else:
        print(json.dumps(body, indent=2, sort_keys=True))


def _ring_payload(args) -> dict:
    out = {"p": args.p, "backend": args.backend, "e": args.e}
    if args.field_modulus:
        out["field_modulus"] = [int(c) for c in args.field_modulus.split(",")]
    return out


def _add_common(sp, ring: bool = True):
    sp.add_argument("--server", default=None,
                    help="base URL of a running service (default: in-process)")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    if ring:
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--backend", choices=["zp", "fqt"], default="zp")
        sp.add_argument("--e", type=int, default=1)
        sp.add_argument("--field-modulus", default=None,
                        help="ascending F_p coefficients, comma-separated")


def build_parser() -> _Parser:
    parser = _Parser(prog="ivmat")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("construct", help="build F (and optionally psi)")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--psi", action="store_true")

    sp = sub.add_parser("check", help="membership of a polynomial")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--poly", required=True,
                    help="file in text or JSON polynomial format")
    sp.add_argument("--den-exp", type=int, default=0,
                    help="denominator exponent for text-format input")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--closure", dest="mode", action="store_const",
                      const="closure")
    mode.add_argument("--ring", dest="mode", action="store_const",
                      const="ring")
    mode.add_argument("--proper", dest="mode", action="store_const",
                      const="proper")
    sp.set_defaults(mode="proper")
    sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("null-ideal", help="null ideal N_k reports")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, required=True)
    act = sp.add_mutually_exclusive_group()
    act.add_argument("--verify", dest="action", action="store_const",
                     const="verify")
    act.add_argument("--min-degree", dest="action", action="store_const",
                     const="min-degree")
    act.add_argument("--lcm", metavar="IOTA", default=None,
                     help="ascending residue-field digits, comma-separated")
    sp.set_defaults(action="verify")
    sp.add_argument("--d-max", type=int, default=None)
    sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("pi-sequence", help="mu_d formula vs oracle table")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--dmax", type=int, default=None)

    sp = sub.add_parser("quat", help="quaternion order isomorphism")
    _add_common(sp, ring=False)
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--order", choices=["hurwitz", "lipschitz"],
                    default="lipschitz")
    sp.add_argument("--check-f", action="store_true")

    sp = sub.add_parser("verify-paper", help="run the reproduction cases")
    _add_common(sp, ring=False)
    case = sp.add_mutually_exclusive_group()
    case.add_argument("--case", default=None)
    case.add_argument("--all", action="store_true")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--dmax", type=int, default=None)
    sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return parser


def _load_poly_arg(path: str, den_exp: int) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read().strip()
    if raw.startswith("{"):
        data = json.loads(raw)
        return {"coeffs": data["coeffs"],
                "den_exp": int(data.get("den_exp", den_exp))}
    return {"text": raw, "den_exp": den_exp}


def _negative_is(body: dict, mode: str) -> bool:
    result = body.get("result", {})
    if mode == "proper":
        return not result.get("properly_integral", False)
    return not result.get("member", False)


def _dispatch(args) -> int:
    fmt = args.format if hasattr(args, "format") else "json"

    if args.cmd == "construct":
        payload = _ring_payload(args) | {"n": args.n, "psi": args.psi}
        status, body = _post("/construct", payload, args.server)
        ok_exit = EX_OK

    elif args.cmd == "check":
        payload = _ring_payload(args) | {
            "n": args.n, "mode": args.mode, "threads": args.threads,
            "poly": _load_poly_arg(args.poly, args.den_exp)}
        status, body = _post("/check", payload, args.server)
        ok_exit = (EX_NEGATIVE if status == 200
                   and _negative_is(body, args.mode) else EX_OK)

    elif args.cmd == "null-ideal":
        action = "lcm" if args.lcm is not None else args.action
        payload = _ring_payload(args) | {
            "n": args.n, "k": args.k, "action": action,
            "d_max": args.d_max, "threads": args.threads}
        if args.lcm is not None:
            payload["iota"] = [int(c) for c in args.lcm.split(",")]
        status, body = _post("/null-ideal", payload, args.server)
        ok_exit = EX_OK
        if status == 200 and action == "verify" \
                and not body["report"]["passes"]:
            ok_exit = EX_CONTRADICTION

    elif args.cmd == "pi-sequence":
        payload = _ring_payload(args) | {"n": args.n, "d_max": args.dmax}
        status, body = _post("/pi-sequence", payload, args.server)
        ok_exit = EX_OK
        if status == 200 and not body.get("agreement"):
            ok_exit = EX_NEGATIVE

    elif args.cmd == "quat":
        payload = {"p": args.p, "k": args.k, "order": args.order,
                   "check_f": args.check_f}
        status, body = _post("/quat", payload, args.server)
        ok_exit = EX_OK
        if status == 200 and not body.get("pass"):
            ok_exit = EX_CONTRADICTION

    elif args.cmd == "verify-paper":
        payload = {"case": args.case, "p": args.p, "n": args.n, "k": args.k,
                   "d_max": args.dmax, "threads": args.threads}
        status, body = _post("/verify-paper", payload, args.server)
        ok_exit = EX_OK
        if status == 200 and not body.get("pass"):
            ok_exit = EX_CONTRADICTION

    else:  # serve
        import uvicorn

        from .api import app
        uvicorn.run(app, host=args.host, port=args.port)
        return EX_OK

    _emit(body, fmt)
    if status == 200:
        return ok_exit
    if status in (400, 422):
        return EX_ERROR if args.cmd in ("check", "pi-sequence") else EX_USAGE
    if status == 409:
        return EX_CONTRADICTION
    return EX_ERROR


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        return _dispatch(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_ERROR
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EX_ERROR


if __name__ == "__main__":
    sys.exit(main())
