"""Run an ASGI app in a background thread on an ephemeral port.

Used by tests (connector conformance goes over a real socket) and by the
in-process mock DL mode. The caller gets the bound base URL and a stop
handle.
"""

from __future__ import annotations

import threading
import time

import uvicorn
from fastapi import FastAPI


class ServerThread:
    """Uvicorn server in a daemon thread; ``base_url`` is ready after start."""

    def __init__(self, app: FastAPI, host: str = "127.0.0.1", port: int = 0):
        self._config = uvicorn.Config(app, host=host, port=port, log_level="warning")
        self._server = uvicorn.Server(self._config)
        self._thread = threading.Thread(target=self._server.run, daemon=True)
        self.base_url = ""

    def start(self, timeout: float = 10.0) -> "ServerThread":
        self._thread.start()
        deadline = time.monotonic() + timeout
        while not self._server.started:
            if time.monotonic() > deadline:
                raise RuntimeError("server did not start in time")
            if not self._thread.is_alive():
                raise RuntimeError("server thread died during startup")
            time.sleep(0.01)
        sock = self._server.servers[0].sockets[0]
        host, port = sock.getsockname()[:2]
        self.base_url = f"http://{host}:{port}"
        return self

    def stop(self) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=10.0)

    def __enter__(self) -> "ServerThread":
        return self.start()

    def __exit__(self, *exc_info) -> None:
        self.stop()
