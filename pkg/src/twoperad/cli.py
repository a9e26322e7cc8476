"""Command-line client for the service.

The client posts one request to the application, served in-process, and
prints the report.  With ``--json`` the report is printed as canonical JSON (sorted
keys, fixed separators), so reruns on the same input are byte-identical.

Exit codes: 0 success, 2 input does not parse, 3 guard or bound exceeded,
4 an invariant or a verified property failed.
"""
from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import httpx

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_INVARIANT = 4

_STATUS_EXIT = {400: EXIT_PARSE, 409: EXIT_GUARD, 500: EXIT_INVARIANT}


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def build_parser() -> argparse.ArgumentParser:
    from .service import VERBS

    p = argparse.ArgumentParser(prog="twoperad", description="Compute with the 2-operad seq and its action.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--input", metavar="PATH", help="JSON input file ('-' for standard input)")
    p.add_argument("--bound", type=int, help="degree or size bound (positive)")
    p.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--json", action="store_true", help="print the full report as canonical JSON")
    return p


def _read_input(path: Optional[str]):
    if path is None:
        return None
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def _summary(body: dict) -> str:
    lines = [f"{body['verb']}: {'ok' if body['ok'] else 'FAILED'}"]
    for key, value in sorted(body["report"].items()):
        if isinstance(value, (int, str, bool)) or value is None:
            lines.append(f"  {key}: {value}")
        elif isinstance(value, dict) and len(value) <= 12 and all(
                isinstance(v, (int, str, bool)) for v in value.values()):
            lines.append(f"  {key}: {canonical(value)}")
    return "\n".join(lines)


async def _post(path: str, payload: dict) -> httpx.Response:
    """Send one request to the application in this process."""
    from .service import app

    transport = httpx.ASGITransport(app=app, raise_app_exceptions=False)
    async with httpx.AsyncClient(transport=transport, base_url="http://twoperad") as client:
        return await client.post(path, json=payload, timeout=None)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = _read_input(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        print(canonical({"error": "parse", "detail": str(exc)}), file=sys.stderr)
        return EXIT_PARSE
    if args.bound is not None and args.bound < 1:
        print(canonical({"error": "parse", "detail": "bound must be positive"}), file=sys.stderr)
        return EXIT_PARSE

    payload = {"input": data, "bound": args.bound, "field": args.field, "seed": args.seed}
    resp = asyncio.run(_post(f"/{args.verb}", payload))
    body = resp.json()
    if resp.status_code != 200:
        print(canonical(body), file=sys.stderr)
        return _STATUS_EXIT.get(resp.status_code, 1)
    print(canonical(body) if args.json else _summary(body))
    return EXIT_OK if body["ok"] else EXIT_INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
