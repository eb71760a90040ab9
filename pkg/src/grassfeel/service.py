"""WebSocket + REST service exposing one live session.

Every mutation broadcasts the full state message to all connected sockets;
clients never compute state themselves. The REST side covers session
creation, a state snapshot, and the event log as JSONL.
"""

from __future__ import annotations

import asyncio
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .acoustics import ArrayConfig, UnitGrid, UnitPlacement
from .optimizer import GPConfig
from .session import Session, SessionConfig
from .trajectory import StmConfig


@dataclass(frozen=True)
class ServiceConfig:
    session: SessionConfig = field(default_factory=SessionConfig)
    seed: int = 0
    listen_address: str = "127.0.0.1"
    port: int = 8000
    array_config_path: str | None = None
    streaming: bool = False
    static_dir: str | None = None


def load_service_config(path) -> ServiceConfig:
    """Build a ServiceConfig from a JSON file; absent keys keep defaults."""
    with open(path) as fh:
        raw = json.load(fh)
    session_kwargs = {}
    for key in ("gate_min_mm", "gate_max_mm"):
        if key in raw:
            session_kwargs[key] = float(raw[key])
    if "stm" in raw:
        session_kwargs["stm"] = StmConfig(**raw["stm"])
    if "gp" in raw:
        gp = dict(raw["gp"])
        if "lengthscales" in gp:
            gp["lengthscales"] = tuple(gp["lengthscales"])
        session_kwargs["gp"] = GPConfig(**gp)
    return ServiceConfig(
        session=SessionConfig(**session_kwargs),
        seed=int(raw.get("seed", 0)),
        listen_address=str(raw.get("listen_address", "127.0.0.1")),
        port=int(raw.get("port", 8000)),
        array_config_path=raw.get("array_config_path"),
        streaming=bool(raw.get("streaming", False)),
        static_dir=raw.get("static_dir"),
    )


def load_array_config(path) -> ArrayConfig:
    """Array geometry from JSON: {"units": [{...}], "grid": {...}}."""
    with open(path) as fh:
        raw = json.load(fh)
    units = tuple(
        UnitPlacement(
            origin_mm=tuple(u["origin_mm"]),
            azimuth_deg=float(u.get("azimuth_deg", 0.0)),
            tilt_deg=float(u.get("tilt_deg", 15.0)),
        )
        for u in raw["units"]
    )
    grid_raw = dict(raw.get("grid", {}))
    if "omitted_cells" in grid_raw:
        grid_raw["omitted_cells"] = tuple(tuple(c) for c in grid_raw["omitted_cells"])
    return ArrayConfig(units=units, grid=UnitGrid(**grid_raw))


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    cfg = config if config is not None else ServiceConfig()
    app = FastAPI(title="grassfeel session service")
    app.state.config = cfg
    app.state.session = Session(cfg.seed, cfg.session)
    app.state.subscribers = set()
    app.state.array_config = (
        load_array_config(cfg.array_config_path) if cfg.array_config_path else None
    )
    app.state.ticker = None

    async def broadcast(message: dict) -> None:
        dead = []
        for ws in list(app.state.subscribers):
            try:
                await ws.send_json(message)
            except Exception:
                dead.append(ws)
        for ws in dead:
            app.state.subscribers.discard(ws)

    @app.post("/session")
    async def create_session(body: dict):
        seed = body.get("seed", cfg.seed)
        if not isinstance(seed, int) or isinstance(seed, bool):
            return {"type": "error", "message": "seed must be an integer"}
        app.state.session = Session(seed, cfg.session)
        message = app.state.session.state_message()
        await broadcast(message)
        return message

    @app.get("/session")
    async def get_session():
        return app.state.session.state_message()

    @app.get("/session/log")
    async def get_log():
        return PlainTextResponse(
            app.state.session.log_jsonl(), media_type="application/x-ndjson"
        )

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        app.state.subscribers.add(ws)
        try:
            await ws.send_json(app.state.session.state_message())
            while True:
                data = await ws.receive_json()
                reply = app.state.session.handle_message(data)
                if reply["type"] == "state":
                    await broadcast(reply)
                else:
                    await ws.send_json(reply)
        except WebSocketDisconnect:
            pass
        finally:
            app.state.subscribers.discard(ws)

    if cfg.streaming:

        @app.on_event("startup")
        async def start_ticker():
            async def tick_loop():
                render = cfg.session.render
                period = render.block_size / render.sample_rate_hz
                loop = asyncio.get_running_loop()
                t0 = loop.time()
                while True:
                    app.state.session.streaming_tick(loop.time() - t0)
                    await asyncio.sleep(period)

            app.state.ticker = asyncio.create_task(tick_loop())

        @app.on_event("shutdown")
        async def stop_ticker():
            if app.state.ticker is not None:
                app.state.ticker.cancel()

    if cfg.static_dir and Path(cfg.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=cfg.static_dir, html=True), name="ui")

    return app
