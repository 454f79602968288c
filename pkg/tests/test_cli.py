"""CLI verbs: seeding, client verbs against a live gateway, exit codes."""

from __future__ import annotations

import json
import socket
import subprocess
import sys
import time

import httpx
import pytest
from click.testing import CliRunner

from scholarlib.api import create_app
from scholarlib.cli import main
from scholarlib.federation import ConnectorClient, Federation
from scholarlib.fixtures import FixtureClock
from scholarlib.mockdl import MockDL, create_mock_dl_app
from scholarlib.serving import ServerThread
from scholarlib.store import Store

from .conftest import small_corpus


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def gateway(tmp_path_factory):
    """A live gateway over a live mock DL, for the thin-client verbs."""
    root = tmp_path_factory.mktemp("cli-gw")
    dl = ServerThread(create_mock_dl_app(MockDL(small_corpus()))).start()
    store = Store(root / "gw.db", clock=FixtureClock())
    app = create_app(store, Federation(store, ConnectorClient(timeout=2.0)))
    server = ServerThread(app).start()
    import httpx

    httpx.post(f"{server.base_url}/registry/dls", json={"name": "mock-dl-a", "base_url": dl.base_url})
    httpx.post(f"{server.base_url}/users", json={"user_id": "alice", "interests": ["violence"]})
    httpx.post(f"{server.base_url}/users", json={"user_id": "bob"})
    httpx.post(f"{server.base_url}/contacts", json={"user_a": "alice", "user_b": "bob"})
    yield server.base_url
    server.stop()
    dl.stop()
    store.close()


class TestSeed:
    def test_deterministic_across_runs(self, runner, tmp_path):
        outputs = []
        for name in ("one", "two"):
            workdir = tmp_path / name
            workdir.mkdir()
            result = runner.invoke(
                main,
                [
                    "seed",
                    "--store", str(workdir / "s.db"),
                    "--corpus", str(workdir / "corpus.jsonl"),
                    "--users", "12",
                    "--edge-prob", "0.1",
                    "--seed", "7",
                ],
            )
            assert result.exit_code == 0, result.output
            store = Store(workdir / "s.db")
            outputs.append(
                (
                    (workdir / "corpus.jsonl").read_bytes(),
                    (workdir / "corpus-a.jsonl").read_bytes(),
                    "\n".join(store.export_lines()),
                )
            )
            store.close()
        assert outputs[0] == outputs[1]

    def test_seeded_store_contents(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["seed", "--store", str(tmp_path / "s.db"), "--corpus", str(tmp_path / "c.jsonl")],
        )
        assert result.exit_code == 0, result.output
        summary = json.loads(result.output)
        assert summary["seeded"]["items"] == 200
        assert summary["seeded"]["users"] == 20
        store = Store(tmp_path / "s.db")
        assert store.check_integrity() == []
        assert {reg.name for reg in store.list_sources()} == {"mock-dl-a", "mock-dl-b"}
        store.close()

    def test_refuses_non_empty_store_without_force(self, runner, tmp_path):
        args = ["seed", "--store", str(tmp_path / "s.db"), "--corpus", str(tmp_path / "c.jsonl")]
        assert runner.invoke(main, args).exit_code == 0
        assert runner.invoke(main, args).exit_code == 1
        assert runner.invoke(main, args + ["--force"]).exit_code == 0


class TestClientVerbs:
    def test_search_json_passthrough(self, runner, gateway):
        result = runner.invoke(main, ["search", "violence", "--json", "--gateway", gateway])
        assert result.exit_code == 0, result.output
        body = json.loads(result.output)
        assert body["results"]
        assert body["query"] == "violence"

    def test_search_human_readable(self, runner, gateway):
        result = runner.invoke(main, ["search", "violence", "--gateway", gateway])
        assert result.exit_code == 0
        assert "score" in result.output

    def test_register_duplicate_is_domain_error(self, runner, gateway):
        result = runner.invoke(
            main, ["register-dl", "mock-dl-a", "http://127.0.0.1:1", "--gateway", gateway]
        )
        assert result.exit_code == 1

    def test_annotate_and_trace(self, runner, gateway):
        search = runner.invoke(main, ["search", "violence", "--json", "--gateway", gateway])
        item = json.loads(search.output)["results"][0]["item"]
        tag = runner.invoke(
            main,
            ["annotate", item, "--user", "alice", "--folder", "men", "--gateway", gateway],
        )
        assert tag.exit_code == 0, tag.output
        assert tag.output.strip().startswith("an-")
        fwd = runner.invoke(
            main,
            ["annotate", item, "--user", "alice", "--forward-to", "bob", "--gateway", gateway],
        )
        assert fwd.exit_code == 0, fwd.output
        trace = runner.invoke(main, ["trace", item, "--json", "--gateway", gateway])
        assert trace.exit_code == 0
        assert json.loads(trace.output)["reach"] == 2

    def test_trace_unknown_item_exit_1(self, runner, gateway):
        result = runner.invoke(main, ["trace", "deadbeef", "--gateway", gateway])
        assert result.exit_code == 1

    def test_annotate_requires_exactly_one_action(self, runner, gateway):
        result = runner.invoke(
            main,
            ["annotate", "x", "--user", "alice", "--folder", "a", "--rating", "3",
             "--gateway", gateway],
        )
        assert result.exit_code == 2

    def test_run_alerts(self, runner, gateway):
        import httpx

        httpx.post(f"{gateway}/alerts", json={"user": "alice"})
        result = runner.invoke(main, ["run-alerts", "--json", "--gateway", gateway])
        assert result.exit_code == 0
        assert "notifications" in json.loads(result.output)

    def test_export_import_round_trip(self, runner, gateway, tmp_path):
        dump_file = tmp_path / "dump.jsonl"
        exported = runner.invoke(main, ["export", "-o", str(dump_file), "--gateway", gateway])
        assert exported.exit_code == 0
        assert dump_file.read_text(encoding="utf-8")
        imported = runner.invoke(main, ["import", str(dump_file), "--gateway", gateway])
        assert imported.exit_code == 0
        again = runner.invoke(main, ["export", "--gateway", gateway])
        assert again.output == dump_file.read_text(encoding="utf-8")

    def test_gateway_unreachable_exit_1(self, runner):
        result = runner.invoke(
            main, ["search", "x", "--gateway", "http://127.0.0.1:1"]
        )
        assert result.exit_code == 1


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


class TestServeProcess:
    """The serve verb as a real process: bind, config wiring, shutdown."""

    def test_serves_with_config_and_shuts_down(self, tmp_path):
        config = tmp_path / "weights.conf"
        config.write_text("alpha=2.0\nlambda=0.5\n", encoding="utf-8")
        port = free_port()
        process = subprocess.Popen(
            [
                sys.executable, "-m", "scholarlib.cli", "serve",
                "--store", str(tmp_path / "serve.db"),
                "--bind", f"127.0.0.1:{port}",
                "--config", str(config),
            ],
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
        )
        try:
            deadline = time.monotonic() + 15
            while True:
                try:
                    response = httpx.get(f"http://127.0.0.1:{port}/healthz", timeout=1.0)
                    assert response.json() == {"status": "ok"}
                    break
                except httpx.HTTPError:
                    if time.monotonic() > deadline:
                        raise AssertionError("gateway never came up")
                    assert process.poll() is None, "serve exited early"
                    time.sleep(0.2)
        finally:
            process.terminate()
            process.wait(timeout=10)
        assert (tmp_path / "serve.db").exists()

    def test_bad_config_refuses_to_start(self, tmp_path):
        config = tmp_path / "weights.conf"
        config.write_text("alpha=-1\n", encoding="utf-8")
        process = subprocess.run(
            [
                sys.executable, "-m", "scholarlib.cli", "serve",
                "--store", str(tmp_path / "x.db"),
                "--bind", f"127.0.0.1:{free_port()}",
                "--config", str(config),
            ],
            capture_output=True,
            timeout=30,
        )
        assert process.returncode == 1

    def test_bad_bind_is_usage_error(self, tmp_path):
        process = subprocess.run(
            [
                sys.executable, "-m", "scholarlib.cli", "serve",
                "--store", str(tmp_path / "x.db"),
                "--bind", "nonsense",
            ],
            capture_output=True,
            timeout=30,
        )
        assert process.returncode == 2
