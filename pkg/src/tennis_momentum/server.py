"""WebSocket transport for live sessions.

One WebSocket connection hosts one session: the first message must be
start_session, after which messages are processed strictly in arrival
order. WebSocket text frames carry the JSON payloads (the frames are
length-delimited by the protocol itself). The coach console's static
assets, when built, are served from the same process.

Run with serve_live(); heartbeat pings go out every 15 seconds.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .session import SessionHub

log = logging.getLogger(__name__)

HEARTBEAT_SECONDS = 15.0


def create_app(static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="tennis-momentum live service")
    hub = SessionHub()
    app.state.hub = hub

    @app.websocket("/live")
    async def live(websocket: WebSocket):
        await websocket.accept()
        session = None
        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    await websocket.send_json(
                        {"type": "error", "field": "payload", "message": "invalid JSON"}
                    )
                    continue
                if session is None:
                    session, reply = hub.open(msg)
                    await websocket.send_json(reply)
                    continue
                reply = session.handle(msg)
                await websocket.send_json(reply)
                if session.ended:
                    break
        except WebSocketDisconnect:
            pass
        finally:
            hub.close(session)

    if static_dir is None:
        static_dir = _default_console_dir()
    if static_dir and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="console")

    return app


def _default_console_dir() -> Path | None:
    # frontend/dist next to the repository root, when the console is built.
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def serve_live(host: str = "127.0.0.1", port: int = 8765, static_dir: Path | None = None):
    """Run the live service until interrupted."""
    import uvicorn

    app = create_app(static_dir)
    log.info("live service on ws://%s:%d/live", host, port)
    uvicorn.run(app, host=host, port=port, ws_ping_interval=HEARTBEAT_SECONDS,
                ws_ping_timeout=HEARTBEAT_SECONDS)
