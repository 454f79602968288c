"""Operator CLI. `serve`, `seed`, and `mock-dl` run against local files;
every other verb is a thin client of the gateway HTTP API.

Exit codes: 0 success, 1 domain error (the gateway rejected the request or
is unreachable), 2 usage error.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click
import httpx
import uvicorn

from .api import create_app
from .enrichment import RankWeights, load_weights
from .errors import ScholarLibError
from .fixtures import FixtureClock, make_fixture, seed_store, write_corpus
from .mockdl import MockDL, create_mock_dl_app, load_corpus
from .store import DEFAULT_STORE_PATH, STORE_PATH_ENV, Store

DEFAULT_BIND = "127.0.0.1:8080"
DEFAULT_GATEWAY = "http://127.0.0.1:8080"


def _fail(message: str, code: int = 1) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _parse_bind(bind: str) -> tuple[str, int]:
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        _fail(f"bad bind address: {bind!r} (expected host:port)", 2)
    return host, int(port)


def _request(gateway: str, method: str, path: str, **kwargs) -> httpx.Response:
    try:
        response = httpx.request(method, gateway.rstrip("/") + path, timeout=30.0, **kwargs)
    except httpx.HTTPError as exc:
        _fail(f"gateway unreachable: {exc}")
    if response.status_code >= 400:
        try:
            body = response.json()
            _fail(f"error {response.status_code}: {body.get('error')}: {body.get('detail', '')}")
        except ValueError:
            _fail(f"error {response.status_code}: {response.text[:200]}")
    return response


@click.group()
def main() -> None:
    """Federation gateway between social networks and scholarly libraries."""


@main.command()
@click.option("--bind", envvar="SCHOLARLIB_BIND", default=DEFAULT_BIND, show_default=True)
@click.option("--store", "store_path", envvar=STORE_PATH_ENV, default=DEFAULT_STORE_PATH, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="RankWeights key=value file.")
@click.option("--alpha", type=float, default=None, help="Forward weight override.")
@click.option("--beta", type=float, default=None, help="Rating weight override.")
@click.option("--gamma", type=float, default=None, help="Comment weight override.")
@click.option("--delta", type=float, default=None, help="Library weight override.")
@click.option("--lambda", "lambda_", type=float, default=None, help="Blend weight override.")
@click.option("--timeout", type=float, default=3.0, show_default=True, help="Per-DL search budget in seconds.")
@click.option("--ui", "ui_dir", type=click.Path(), default=None, help="Directory of static UI files to mount at /ui.")
def serve(bind, store_path, config_path, alpha, beta, gamma, delta, lambda_, timeout, ui_dir):
    """Run the gateway service."""
    host, port = _parse_bind(bind)
    try:
        weights = load_weights(config_path) if config_path else RankWeights()
        weights = weights.replaced(alpha=alpha, beta=beta, gamma=gamma, delta=delta, lambda_=lambda_)
        store = Store(store_path)
    except ScholarLibError as exc:
        _fail(f"{exc.code}: {exc.detail}")
    from .federation import ConnectorClient, Federation

    app = create_app(store, Federation(store, ConnectorClient(timeout=timeout)), weights, ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    finally:
        store.close()


@main.command("mock-dl")
@click.argument("corpus", type=click.Path(exists=True))
@click.option("--bind", default="127.0.0.1:9001", show_default=True)
def mock_dl(corpus, bind):
    """Serve a corpus file through the connector protocol."""
    host, port = _parse_bind(bind)
    try:
        records = load_corpus(corpus)
    except ScholarLibError as exc:
        _fail(f"{exc.code}: {exc.detail}")
    click.echo(f"mock DL serving {len(records)} records on {bind}")
    uvicorn.run(create_mock_dl_app(MockDL(records)), host=host, port=port, log_level="warning")


@main.command()
@click.option("--store", "store_path", envvar=STORE_PATH_ENV, default=DEFAULT_STORE_PATH, show_default=True)
@click.option("--users", "n_users", type=int, default=20, show_default=True)
@click.option("--edge-prob", type=float, default=0.15, show_default=True)
@click.option("--seed", "seed_value", type=int, default=7, show_default=True)
@click.option("--corpus", "corpus_path", type=click.Path(), default="corpus.jsonl", show_default=True,
              help="Corpus file: loaded if it exists, generated and written otherwise.")
@click.option("--dl-a-url", default="http://127.0.0.1:9001", show_default=True)
@click.option("--dl-b-url", default="http://127.0.0.1:9002", show_default=True)
@click.option("--force", is_flag=True, help="Wipe a non-empty store before seeding.")
def seed(store_path, n_users, edge_prob, seed_value, corpus_path, dl_a_url, dl_b_url, force):
    """Populate an empty store with the deterministic demo fixture.

    Writes the corpus plus the two per-source shards (-a/-b) next to it;
    serve those shards with `scholarlib mock-dl` on the registered URLs.
    """
    try:
        fixture = make_fixture(seed=seed_value, n_users=n_users, edge_prob=edge_prob)
        corpus_file = Path(corpus_path)
        if corpus_file.exists():
            fixture = dataclasses.replace(fixture, corpus=load_corpus(corpus_file))
        else:
            write_corpus(fixture.corpus, corpus_file)
        stem = corpus_file.with_suffix("")
        write_corpus(fixture.shard("a"), f"{stem}-a.jsonl")
        write_corpus(fixture.shard("b"), f"{stem}-b.jsonl")

        store = Store(store_path, clock=FixtureClock())
        if force:
            store.wipe()
        counts = seed_store(store, fixture, {"mock-dl-a": dl_a_url, "mock-dl-b": dl_b_url})
        store.compact()
        store.close()
    except ScholarLibError as exc:
        _fail(f"{exc.code}: {exc.detail}")
    click.echo(json.dumps({"seeded": counts, "store": str(store_path), "corpus": str(corpus_file)}))


@main.command("register-dl")
@click.argument("name")
@click.argument("base_url")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def register_dl(name, base_url, gateway, as_json):
    """Register a digital library with the gateway."""
    response = _request(gateway, "POST", "/registry/dls", json={"name": name, "base_url": base_url})
    if as_json:
        click.echo(response.text)
    else:
        body = response.json()
        click.echo(f"registered {body['name']} ({body['status']})")


@main.command()
@click.argument("query")
@click.option("--offset", type=int, default=0)
@click.option("--limit", type=int, default=10)
@click.option("--sources", default=None, help="Comma-separated DL names.")
@click.option("--user", default=None, help="Flag results already in this user's library.")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def search(query, offset, limit, sources, user, gateway, as_json):
    """Federated search with social enrichment."""
    params = {"q": query, "offset": offset, "limit": limit}
    if sources:
        params["sources"] = sources
    if user:
        params["user"] = user
    response = _request(gateway, "GET", "/search", params=params)
    if as_json:
        click.echo(response.text)
        return
    body = response.json()
    for status in body["source_errors"]:
        click.echo(f"! source {status['source']} failed: {status['error']}", err=True)
    for position, result in enumerate(body["results"], start=1):
        record = result["record"]
        summary = result["summary"]
        badges = (
            f"c:{summary['comment_count']} r:{summary['rating_count']} "
            f"f:{summary['forward_count']} lib:{summary['library_count']}"
        )
        flag = " [in library]" if result.get("in_library") else ""
        click.echo(
            f"{position:2d}. {record['title']}  ({result['source']}, "
            f"score {result['final_score']:.3f}, {badges}){flag}"
        )
        click.echo(f"    item {result['item']}")


@main.command()
@click.argument("item_id")
@click.option("--user", required=True)
@click.option("--comment", default=None, help="Comment text.")
@click.option("--rating", type=int, default=None, help="Rating 1..5.")
@click.option("--folder", default=None, help="Library folder to tag into.")
@click.option("--forward-to", default=None, help="Contact to forward the item to.")
@click.option("--parent", default=None, help="Parent forward id for chains.")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def annotate(item_id, user, comment, rating, folder, forward_to, parent, gateway, as_json):
    """Comment, rate, shelve, or forward an item (exactly one action)."""
    actions = [value is not None for value in (comment, rating, folder, forward_to)]
    if sum(actions) != 1:
        raise click.UsageError("pass exactly one of --comment/--rating/--folder/--forward-to")
    if comment is not None:
        path, body = f"/items/{item_id}/comments", {"user": user, "text": comment}
    elif rating is not None:
        path, body = f"/items/{item_id}/ratings", {"user": user, "value": rating}
    elif folder is not None:
        path, body = f"/items/{item_id}/library", {"user": user, "folder": folder}
    else:
        path, body = f"/items/{item_id}/forwards", {"user": user, "to": forward_to, "parent": parent}
    response = _request(gateway, "POST", path, json=body)
    if as_json:
        click.echo(response.text)
    else:
        click.echo(response.json()["annotation_id"])


@main.command("run-alerts")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def run_alerts_cmd(gateway, as_json):
    """Re-run every stored alert against the federation."""
    response = _request(gateway, "POST", "/alerts/run")
    if as_json:
        click.echo(response.text)
    else:
        notes = response.json()["notifications"]
        click.echo(f"{len(notes)} notification(s)")
        for note in notes:
            click.echo(f"  {note['recipient']} <- {note['item']} ({note['reason']})")


@main.command()
@click.argument("item_id")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def trace(item_id, gateway, as_json):
    """Show the forwarding spread of one item."""
    response = _request(gateway, "GET", f"/items/{item_id}/spread")
    if as_json:
        click.echo(response.text)
    else:
        body = response.json()
        click.echo(
            f"item {body['item']}: reach={body['reach']} max_depth={body['max_depth']} "
            f"roots={len(body['roots'])} edges={len(body['edges'])}"
        )


@main.command()
@click.option("-o", "--output", type=click.Path(), default=None, help="Write the dump to a file.")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
def export(output, gateway):
    """Dump users, items, and annotations as JSON lines."""
    response = _request(gateway, "GET", "/export")
    if output:
        Path(output).write_text(response.text, encoding="utf-8")
        click.echo(f"wrote {output}")
    else:
        click.echo(response.text, nl=False)


@main.command("import")
@click.argument("dump", type=click.Path(exists=True))
@click.option("--merge", is_flag=True, help="Merge into the current store instead of replacing it.")
@click.option("--gateway", envvar="SCHOLARLIB_GATEWAY", default=DEFAULT_GATEWAY, show_default=True)
def import_cmd(dump, merge, gateway):
    """Load a JSON-lines dump into the gateway store."""
    text = Path(dump).read_text(encoding="utf-8")
    response = _request(
        gateway, "POST", f"/import?replace={'false' if merge else 'true'}", content=text
    )
    click.echo(response.text)


if __name__ == "__main__":
    main()
