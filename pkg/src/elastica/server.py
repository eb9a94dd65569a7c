"""Streaming session server.

One WebSocket connection at ``/session`` drives one descent session.  The
client opens the socket, sends a ``start`` message with the drawn points and
parameter overrides, and receives ``frame`` messages in iteration order at
the snapshot cadence, ending with a single ``done`` (or ``error``) message.
Control messages apply between steps.  The engine runs in a worker thread
per session; a slow client only ever sees the latest frame (drop-to-latest),
never a stalled engine.  Static files (the drawing UI) are served at ``/``.
"""
from __future__ import annotations

import asyncio
import json
import queue
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles

from .config import load_params
from .errors import DegenerateInput, ElasticaError
from .session import Session, SessionStatus

FALLBACK_PAGE = """<!doctype html>
<html><head><title>elastica</title></head>
<body><h1>elastica session server</h1>
<p>No UI bundle found. Connect a WebSocket client to <code>/session</code>.</p>
</body></html>
"""


class _LatestSlot:
    """Single-slot mailbox: writers overwrite, readers take the newest.

    ``put`` grants the consumer a short grace period to pick up the previous
    frame, so clients that keep up see every frame; only genuinely slow
    clients drop to the latest.  The grace stays well under one snapshot
    interval of wall time, which is the engine's allowed stall budget.
    """

    GRACE = 0.25

    def __init__(self):
        self._cond = threading.Condition()
        self._item = None
        self._closed = False

    def put(self, item) -> None:
        with self._cond:
            if self._item is not None:
                self._cond.wait(self.GRACE)
            self._item = item
            self._cond.notify_all()

    def close(self) -> None:
        with self._cond:
            self._closed = True
            self._cond.notify_all()

    def take(self, timeout: float = 0.5):
        """(item or None, closed)."""
        with self._cond:
            if self._item is None and not self._closed:
                self._cond.wait(timeout)
            item, self._item = self._item, None
            self._cond.notify_all()
            return item, self._closed


class _SessionWorker:
    """Runs the engine loop for one session in a daemon thread."""

    def __init__(self, session: Session):
        self.session = session
        self.controls: queue.Queue = queue.Queue()
        self.frames = _LatestSlot()
        self.terminal: Optional[dict] = None
        self._stop = threading.Event()
        self.thread = threading.Thread(target=self._loop, daemon=True)

    def start(self) -> None:
        self.thread.start()

    def shutdown(self) -> None:
        self._stop.set()
        self.frames.close()

    def _apply_controls(self) -> None:
        while True:
            try:
                msg = self.controls.get_nowait()
            except queue.Empty:
                return
            action = msg.get("action")
            try:
                self.session.control(
                    action,
                    **{k: v for k, v in msg.items() if k not in ("type", "action")},
                )
            except (ValueError, ElasticaError) as err:
                self.frames.put({"type": "error", "code": "BadControl", "message": str(err)})

    def _loop(self) -> None:
        session = self.session
        while not self._stop.is_set():
            self._apply_controls()
            if session.status is SessionStatus.PAUSED:
                self._stop.wait(0.01)
                continue
            if session.status is SessionStatus.RUNNING:
                frame = session.advance()
                if frame is not None:
                    self.frames.put(frame.to_wire())
                continue
            break
        self.terminal = self.session.terminal_message()
        self.frames.close()


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="elastica")

    @app.websocket("/session")
    async def session_endpoint(ws: WebSocket):  # pragma: no cover - exercised via TestClient
        await ws.accept()
        worker: Optional[_SessionWorker] = None
        try:
            start_msg = await ws.receive_json()
            if start_msg.get("type") != "start":
                await ws.send_json({"type": "error", "code": "Protocol", "message": "expected a start message"})
                await ws.close()
                return
            overrides = start_msg.get("params") or {}
            try:
                params = load_params(**overrides)
                session = Session(params=params)
                first = session.start(start_msg.get("points") or [])
            except (DegenerateInput, ElasticaError, ValueError, TypeError) as err:
                await ws.send_json({"type": "error", "code": type(err).__name__, "message": str(err)})
                await ws.close()
                return
            await ws.send_json({"type": "session", "sessionId": session.session_id})
            await ws.send_json(first.to_wire())
            worker = _SessionWorker(session)
            worker.start()

            async def receive_controls():
                while True:
                    msg = await ws.receive_json()
                    if msg.get("type") == "control":
                        worker.controls.put(msg)

            recv_task = asyncio.ensure_future(receive_controls())
            loop = asyncio.get_event_loop()
            try:
                while True:
                    item, closed = await loop.run_in_executor(None, worker.frames.take, 0.25)
                    if item is not None:
                        await ws.send_json(item)
                    if closed and item is None:
                        break
                if worker.terminal is not None:
                    await ws.send_json(worker.terminal)
            finally:
                recv_task.cancel()
        except (WebSocketDisconnect, json.JSONDecodeError):
            pass
        finally:
            if worker is not None:
                worker.shutdown()
            try:
                await ws.close()
            except RuntimeError:
                pass

    bundle = Path(static_dir) if static_dir else None
    if bundle is not None and bundle.is_dir():
        app.mount("/", StaticFiles(directory=str(bundle), html=True), name="ui")
    else:

        @app.get("/")
        async def index() -> HTMLResponse:  # pragma: no cover - trivial
            return HTMLResponse(FALLBACK_PAGE)

    return app
