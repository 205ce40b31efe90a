"""Thin command-line client for the service.

Every verb posts to the HTTP API; without --server the app is mounted
in-process, so no daemon is needed.  Data commands print one canonical
JSON line; verify streams one JSON line per report.  Exit codes: 0 on
success, 2 on bad input, 3 on a theorem violation or a failing suite.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .jsonio import dumps

EXIT_INPUT = 2
EXIT_THEOREM = 3


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # mount the app in-process; no daemon needed for one-shot commands
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _post(ctx, path, payload):
    with _client(ctx.obj.get("server")) as client:
        response = client.post(path, json=payload)
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json()["detail"]
        kind, message = detail.get("kind", "error"), detail.get("message", "")
    except Exception:
        kind, message = "error", response.text
    click.echo(f"error ({kind}): {message}", err=True)
    sys.exit(EXIT_THEOREM if kind == "theorem-violation" else EXIT_INPUT)


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error (input-error): cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_INPUT)


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; in-process when omitted.")
@click.pass_context
def main(ctx, server):
    """Restriction-monoid toolkit: construct, analyze, verify, export."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.argument("input", default="-")
@click.pass_context
def check(ctx, input):
    """Axiom report for a biunary algebra (file path or '-' for stdin)."""
    data = _post(ctx, "/check", _read_json(input))
    click.echo(dumps(data))
    if not data["ok"]:
        sys.exit(1)


@main.command()
@click.argument("input", default="-")
@click.pass_context
def analyze(ctx, input):
    """Projections, order, least monoid congruence and predicates."""
    click.echo(dumps(_post(ctx, "/analyze", _read_json(input))))


@main.command("prefix-expand")
@click.option("--group", "group_path", required=True, help="Group multiplication table (JSON).")
@click.option("--names", default=None, help="Comma-separated element names for labels.")
@click.pass_context
def prefix_expand(ctx, group_path, names):
    """Prefix expansion of a finite group, as pairs (A, g)."""
    payload = {"group": _read_json(group_path)}
    if names:
        payload["names"] = names.split(",")
    click.echo(dumps(_post(ctx, "/prefix-expand", payload)))


@main.command()
@click.argument("input", default="-")
@click.pass_context
def product(ctx, input):
    """Partial-action product from a premorphism bundle (source, Y, map)."""
    click.echo(dumps(_post(ctx, "/product", _read_json(input))))


@main.command()
@click.argument("input", default="-")
@click.option("--relations", default=None, type=click.Choice(["pm", "ls", "rs", "s", "hom"]))
@click.option("--signature", default=None, type=click.Choice(["restriction", "inverse"]))
@click.option("--bound", default=None, type=int)
@click.pass_context
def enumerate(ctx, input, relations, signature, bound):
    """Bounded enumeration of a presented expansion.

    INPUT is either a monoid table or a full presentation bundle; the
    flags override the bundle fields.
    """
    data = _read_json(input)
    if "monoid" not in data:
        data = {"monoid": data}
    if relations:
        data["relations"] = relations
    if signature:
        data["signature"] = signature
    if bound is not None:
        data["bound"] = bound
    click.echo(dumps(_post(ctx, "/enumerate", data)))


@main.command()
@click.option("--expr", required=True, help="Word such as \"a b a'\".")
@click.option("--alphabet", default=None)
@click.pass_context
def munn(ctx, expr, alphabet):
    """Munn tree of a signed word."""
    payload = {"expr": expr}
    if alphabet:
        payload["alphabet"] = alphabet
    click.echo(dumps(_post(ctx, "/munn", payload)))


@main.command()
@click.option("--word", required=True, help="Signed word such as \"a b'\".")
@click.option("--alphabet", default=None)
@click.pass_context
def du(ctx, word, alphabet):
    """Projection assigned to a signed word by the suffix recursion."""
    payload = {"word": word}
    if alphabet:
        payload["alphabet"] = alphabet
    click.echo(dumps(_post(ctx, "/du", payload)))


@main.command()
@click.option("--suite", default="default", show_default=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--timings", is_flag=True, help="Include wall times (breaks byte-stability).")
@click.pass_context
def verify(ctx, suite, seed, timings):
    """Run a verification suite; exit 0 iff nothing failed."""
    data = _post(ctx, "/verify", {"suite": suite, "seed": seed, "timings": timings})
    for report in data["reports"]:
        click.echo(dumps(report))
    if not data["all_pass"]:
        sys.exit(EXIT_THEOREM)


@main.command("export-dot")
@click.argument("input", default="-")
@click.option("--what", required=True, type=click.Choice(["order", "cayley"]))
@click.option("--gens", default=None, help="Comma-separated generator indices for the Cayley graph.")
@click.pass_context
def export_dot(ctx, input, what, gens):
    """DOT text for the natural order or a right Cayley graph."""
    payload = {"algebra": _read_json(input), "what": what}
    if gens:
        try:
            payload["generators"] = [int(x) for x in gens.split(",")]
        except ValueError:
            click.echo("error (input-error): --gens must be comma-separated integers", err=True)
            sys.exit(EXIT_INPUT)
    data = _post(ctx, "/export-dot", payload)
    click.echo(data["dot"], nl=False)


if __name__ == "__main__":
    main()
