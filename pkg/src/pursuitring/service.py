"""Live session host: wall-clock-paced engine loop with steerable evader.

One session owns one engine rollout and ticks it at dt/pace wall intervals,
broadcasting every frame to all connected WebSocket clients as single-line
JSON objects. Clients steer the evader (first client to steer owns steering;
others spectate); commands are applied at tick boundaries and logged by tick
index, so a recorded session replays to the identical trace through
``engine.run(scenario, config, command_log=...)``.

Protocol (all messages carry a ``type`` field; unknown fields are ignored):
  server -> client: hello, frame, end, error
  client -> server: steer {heading}, stop, pause, resume, reset
"""

from __future__ import annotations

import asyncio
import json
import math
import secrets
import time
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from . import kernels
from .engine import Rollout, SimConfig, SimTrace, config_from_scenario
from .geometry import TWO_PI
from .scenario import ScenarioDoc, scenario_to_dict
from .traceio import save_trace


def frame_payload(rollout: Rollout) -> dict:
    """Wire form of the latest frame, with render-ready geometry.

    Escapable arcs and interception disks are computed server-side so the
    client stays math-free; arc angles are world-frame, anchored at the evader.
    """
    m = rollout.frames_recorded - 1
    n = rollout.n
    pos = rollout.buf_pos[m]
    ex, ey = rollout.buf_epos[m]
    order = rollout.buf_order[m]
    eps = rollout.buf_eps[m]
    met = rollout.buf_metrics[m]
    theta_g = float(met[kernels.MET_THETA_G])

    alphas = []
    radii = []
    for i in range(n):
        dx = pos[i, 0] - ex
        dy = pos[i, 1] - ey
        radii.append(math.sqrt(dx * dx + dy * dy))
        a = math.atan2(dy, dx)
        if a < 0.0:
            a += TWO_PI
        if a == TWO_PI:
            a = 0.0
        alphas.append(a)

    arcs = []
    if n >= 2:
        for j in range(n):
            if eps[j] > 0.0:
                i0 = int(order[j])
                start = alphas[i0] + 0.5 * rollout.theta[i0]
                arcs.append({"start": start, "end": start + float(eps[j])})
    sectors = [
        {
            "start": alphas[i] - 0.5 * float(rollout.theta[i]),
            "end": alphas[i] + 0.5 * float(rollout.theta[i]),
        }
        for i in range(n)
    ]

    disks = []
    for i in range(n):
        lam = float(rollout.lam[i])
        scale = 1.0 / (1.0 - lam * lam)
        disks.append(
            {
                "cx": float(ex + (pos[i, 0] - ex) * scale),
                "cy": float(ey + (pos[i, 1] - ey) * scale),
                "r": float(radii[i] * lam * scale),
            }
        )

    return {
        "type": "frame",
        "tick": rollout.tick_index,
        "t": float(rollout.buf_t[m]),
        "pursuers": pos.tolist(),
        "evader": [float(ex), float(ey)],
        "theta_G": theta_g,
        "P": theta_g / TWO_PI,
        "min_dist": float(met[kernels.MET_MIN_R]),
        "order": [int(rollout.ids[j]) for j in order],
        "coverage": [float(e) for e in eps] if n >= 2 else [],
        "arcs": arcs,
        "sectors": sectors,
        "disks": disks,
    }


class LiveSession:
    """One engine loop plus its connected clients."""

    def __init__(
        self,
        scenario: ScenarioDoc,
        config: Optional[SimConfig] = None,
        pace: float = 1.0,
        log_dir: Optional[Path] = None,
    ):
        if pace <= 0.0:
            raise ValueError("pace must be positive")
        self.scenario = scenario
        self.config = config if config is not None else config_from_scenario(scenario)
        self.pace = pace
        self.log_dir = log_dir
        self.session_id = secrets.token_hex(4)
        self.rollout = Rollout(scenario, self.config)
        self.clients: list = []
        self.owner: Optional[WebSocket] = None
        self.paused = False
        self._buffered_command: Optional[dict] = None
        self._task: Optional[asyncio.Task] = None
        self._wake = asyncio.Event()
        self.ended = False

    # -- messaging ---------------------------------------------------------

    def hello_payload(self) -> dict:
        doc = self.scenario
        return {
            "type": "hello",
            "session": self.session_id,
            "scenario": doc.name,
            "n": len(doc.pursuers),
            "d_c": doc.d_c,
            "dt": self.config.dt,
            "pace": self.pace,
            "mode": self.config.mode,
            "evader_speed": doc.evader.max_speed,
            "pursuer_speeds": [p.max_speed for p in doc.pursuers],
        }

    async def _send(self, ws: WebSocket, payload: dict) -> bool:
        try:
            await ws.send_text(json.dumps(payload, separators=(",", ":")))
            return True
        except Exception:
            return False

    async def broadcast(self, payload: dict) -> None:
        dead = []
        for ws in self.clients:
            if not await self._send(ws, payload):
                dead.append(ws)
        for ws in dead:
            self.drop_client(ws)

    # -- client lifecycle ----------------------------------------------------

    async def add_client(self, ws: WebSocket) -> None:
        self.clients.append(ws)
        await self._send(ws, self.hello_payload())
        await self._send(ws, frame_payload(self.rollout))
        if self._task is None or self._task.done():
            self._task = asyncio.create_task(self._loop())

    def drop_client(self, ws: WebSocket) -> None:
        if ws in self.clients:
            self.clients.remove(ws)
        if ws is self.owner:
            self.owner = None

    # -- commands ------------------------------------------------------------

    async def handle_message(self, ws: WebSocket, text: str) -> None:
        try:
            msg = json.loads(text)
            if not isinstance(msg, dict):
                raise ValueError("message must be an object")
            mtype = msg.get("type")
        except (json.JSONDecodeError, ValueError) as exc:
            await self._send(ws, {"type": "error", "message": f"malformed message: {exc}"})
            return

        if mtype == "steer":
            heading = msg.get("heading")
            if not isinstance(heading, (int, float)) or not math.isfinite(heading):
                await self._send(ws, {"type": "error", "message": "steer needs a finite heading"})
                return
            if self.owner is None:
                self.owner = ws
            if ws is not self.owner:
                await self._send(ws, {"type": "error", "message": "another client owns steering"})
                return
            cmd = {"op": "steer", "heading": float(heading)}
            if self.paused:
                self._buffered_command = cmd
            else:
                self.rollout.submit_command(cmd)
        elif mtype == "stop":
            if self.owner in (None, ws):
                self.owner = self.owner or ws
                cmd = {"op": "stop"}
                if self.paused:
                    self._buffered_command = cmd
                else:
                    self.rollout.submit_command(cmd)
            else:
                await self._send(ws, {"type": "error", "message": "another client owns steering"})
        elif mtype == "pause":
            self.paused = True
        elif mtype == "resume":
            if self.paused:
                self.paused = False
                if self._buffered_command is not None:
                    self.rollout.submit_command(self._buffered_command)
                    self._buffered_command = None
                self._wake.set()
        elif mtype == "reset":
            self.rollout = Rollout(self.scenario, self.config)
            self.paused = False
            self._buffered_command = None
            self.ended = False
            await self.broadcast(self.hello_payload())
            await self.broadcast(frame_payload(self.rollout))
        else:
            await self._send(ws, {"type": "error", "message": f"unknown message type {mtype!r}"})

    # -- engine loop -----------------------------------------------------------

    async def _loop(self) -> None:
        interval = self.config.dt / self.pace
        start = time.monotonic()
        ticks_done = 0
        while self.clients and not self.ended:
            if self.paused:
                self._wake.clear()
                try:
                    await asyncio.wait_for(self._wake.wait(), timeout=0.5)
                except asyncio.TimeoutError:
                    continue
                start = time.monotonic() - ticks_done * interval
                continue
            alive = self.rollout.tick()
            ticks_done += 1
            await self.broadcast(frame_payload(self.rollout))
            if not alive:
                await self._finish()
                return
            deadline = start + ticks_done * interval
            delay = deadline - time.monotonic()
            if delay > 0:
                await asyncio.sleep(delay)
            else:
                await asyncio.sleep(0)

    async def _finish(self) -> None:
        self.ended = True
        verdict = self.rollout.verdict
        payload = {
            "type": "end",
            "verdict": verdict.kind,
            "by": verdict.by,
            "t_c": verdict.t_c,
        }
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            trace = self.rollout.trace()
            save_trace(trace, self.log_dir / f"session_{self.session_id}_trace.json")
            (self.log_dir / f"session_{self.session_id}_commands.json").write_text(
                json.dumps(
                    {str(k): v for k, v in sorted(trace.command_log.items())},
                    indent=2,
                    sort_keys=True,
                )
                + "\n",
                encoding="utf-8",
            )
        await self.broadcast(payload)
        for ws in list(self.clients):
            try:
                await ws.close()
            except Exception:
                pass
        self.clients.clear()

    def trace(self) -> SimTrace:
        return self.rollout.trace()


def build_app(
    scenario: ScenarioDoc,
    config: Optional[SimConfig] = None,
    pace: float = 1.0,
    ui_dir: Optional[str] = None,
    log_dir: Optional[str] = None,
) -> FastAPI:
    """FastAPI app hosting one live session and (optionally) the browser UI."""
    app = FastAPI(title="pursuitring live session")
    session = LiveSession(
        scenario,
        config,
        pace=pace,
        log_dir=Path(log_dir) if log_dir else None,
    )
    app.state.session = session

    @app.get("/api/session")
    def session_info() -> JSONResponse:
        return JSONResponse(
            {
                "session": session.session_id,
                "scenario": scenario_to_dict(session.scenario),
                "pace": session.pace,
                "ended": session.ended,
            }
        )

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        await session.add_client(ws)
        try:
            while True:
                text = await ws.receive_text()
                await session.handle_message(ws, text)
        except WebSocketDisconnect:
            pass
        finally:
            session.drop_client(ws)

    if ui_dir is not None:
        root = Path(ui_dir)
        index = root / "index.html"

        @app.get("/")
        def serve_index() -> FileResponse:
            return FileResponse(index)

        app.mount("/", StaticFiles(directory=str(root)), name="ui")

    return app


def serve(
    scenario: ScenarioDoc,
    host: str = "127.0.0.1",
    port: int = 8642,
    pace: float = 1.0,
    ui_dir: Optional[str] = None,
    log_dir: Optional[str] = None,
    config: Optional[SimConfig] = None,
) -> None:
    """Run the session service (blocking)."""
    import uvicorn

    app = build_app(scenario, config=config, pace=pace, ui_dir=ui_dir, log_dir=log_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
