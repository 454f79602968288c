"""Shared fixtures: stores, mock DL servers, and misbehaving connectors."""

from __future__ import annotations

import asyncio
import warnings

import pytest
from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse

from scholarlib.fixtures import FixtureClock, make_fixture
from scholarlib.mockdl import MockDL, create_mock_dl_app
from scholarlib.records import DCRecord
from scholarlib.serving import ServerThread
from scholarlib.store import Store

warnings.filterwarnings("ignore", message="Using `httpx` with `starlette.testclient`")


@pytest.fixture
def store(tmp_path):
    st = Store(tmp_path / "test.db", clock=FixtureClock())
    yield st
    st.close()


@pytest.fixture(scope="session")
def fixture7():
    return make_fixture(seed=7)


def small_corpus() -> list[DCRecord]:
    return [
        DCRecord(
            identifier="v-1",
            title="Violence and gender in urban settings",
            subjects=["Gewalt", "Geschlecht"],
            description="A study of violence in cities.",
        ),
        DCRecord(
            identifier="v-2",
            title="Youth violence revisited",
            subjects=["Gewalt", "Jugend"],
        ),
        DCRecord(
            identifier="m-1",
            title="Media habits of adolescents",
            subjects=["Medien", "Jugend"],
        ),
    ]


@pytest.fixture(scope="module")
def mock_dl_server():
    """One live mock DL over a real socket, serving the small corpus."""
    dl = MockDL(small_corpus())
    server = ServerThread(create_mock_dl_app(dl)).start()
    server.dl = dl
    yield server
    server.stop()


def make_misbehaving_dl(mode: str) -> FastAPI:
    """A connector that violates the protocol in one specific way."""
    app = FastAPI()

    @app.get("/search")
    async def search(q: str = "", offset: int = 0, limit: int = 10):
        if mode == "bad_json":
            return PlainTextResponse("this is not json {{{")
        if mode == "http_500":
            return JSONResponse(status_code=500, content={"oops": True})
        if mode == "wrong_schema":
            return {"count": 3, "records": []}
        if mode == "overful":
            item = {"identifier": "x", "title": "X"}
            return {"total": limit + 1, "items": [item] * (limit + 1)}
        if mode == "hang":
            await asyncio.sleep(5.0)
            return {"total": 0, "items": []}
        raise AssertionError(f"unknown mode {mode}")

    return app


@pytest.fixture(scope="module")
def misbehaving_servers():
    """Live misbehaving DLs keyed by failure mode."""
    servers = {
        mode: ServerThread(make_misbehaving_dl(mode)).start()
        for mode in ("bad_json", "http_500", "wrong_schema", "overful")
    }
    yield {mode: server.base_url for mode, server in servers.items()}
    for server in servers.values():
        server.stop()
