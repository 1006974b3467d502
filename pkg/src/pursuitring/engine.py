"""Deterministic fixed-step closed-loop simulation.

One tick: evaluate the current frame (polar transform, ring sort, coverage
gaps, per-pursuer control, metrics), ask the evader strategy for its velocity,
advance every agent simultaneously by explicit Euler, and check capture by
the earliest crossing of the capture radius along the relative motion segment
(so a fast fly-through cannot skip detection; the terminal frame is placed at
the crossing time). All per-tick math runs in the selected kernel backend;
traces are recorded into preallocated column arrays and materialized into
Frame objects on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .capture import CaptureCertificate, CaptureParams, theorem2_certificate
from .control import ControlState, PursuerSpec
from .errors import (
    DegeneratePositionError,
    PotentialOverflowError,
    ScenarioValidationError,
)
from .evaders import ExternalStrategy, build_strategy
from .fields import FieldParams, NeighborSets
from .geometry import TWO_PI, RingView, Vec2, occupied_angle, to_local_polar
from .scenario import ScenarioDoc, validate_scenario


@dataclass(frozen=True)
class SimConfig:
    """Engine parameters for one run."""

    dt: float
    horizon: float
    capture: CaptureParams
    fields: Optional[FieldParams] = None
    mode: str = "sp2"
    seed: int = 0
    sensing_radius: Optional[float] = None

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.horizon <= self.dt:
            raise ValueError("horizon must exceed dt")
        if self.mode not in ("sp2", "sp5"):
            raise ValueError(f"mode must be sp2 or sp5, got {self.mode!r}")
        if self.mode == "sp5" and self.fields is None:
            raise ValueError("sp5 mode requires field parameters")


@dataclass(frozen=True)
class Verdict:
    kind: str  # "captured" | "horizon_exceeded" | "error"
    by: Optional[int] = None
    t_c: Optional[float] = None
    detail: Optional[str] = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "by": self.by, "t_c": self.t_c, "detail": self.detail}


@dataclass(frozen=True)
class FrameMetrics:
    theta_G: float
    sum_r: float
    P: float
    min_dist: float
    edge_lengths: tuple
    evader_inside: bool


@dataclass(frozen=True)
class Frame:
    """One recorded instant: positions, ring summary, controls, metrics."""

    t: float
    pursuer_ids: tuple
    pursuers: tuple
    evader: Vec2
    ring: Optional[RingView]
    controls: tuple
    metrics: FrameMetrics


def config_from_scenario(doc: ScenarioDoc) -> SimConfig:
    """Build the engine config a scenario asks for."""
    lambda_min = min(p.max_speed for p in doc.pursuers) / doc.evader.max_speed
    return SimConfig(
        dt=doc.dt,
        horizon=doc.horizon,
        capture=CaptureParams(d_c=doc.d_c, lambda_min=lambda_min),
        fields=doc.fields,
        mode=doc.mode,
        seed=doc.seed,
        sensing_radius=doc.sensing_radius,
    )


class SimTrace:
    """Time-indexed record of a run, backed by column arrays.

    Frames are built lazily; the raw arrays are the storage format and the
    serialization source, so a trace round-trips exactly.
    """

    def __init__(self, rollout: "Rollout"):
        m = rollout.frames_recorded
        self.ids: tuple = tuple(rollout.ids)
        self.n = rollout.n
        self.mode = rollout.config.mode
        self.scenario = rollout.scenario
        self.config = rollout.config
        self.backend = kernels.BACKEND
        self.t = rollout.buf_t[:m].copy()
        self.pos = rollout.buf_pos[:m].copy()
        self.epos = rollout.buf_epos[:m].copy()
        self.order = rollout.buf_order[:m].copy()
        self.eps = rollout.buf_eps[:m].copy()
        self.ctrl = rollout.buf_ctrl[:m].copy()
        self.edges = rollout.buf_edges[:m].copy()
        self.metrics = rollout.buf_metrics[:m].copy()
        self.verdict: Verdict = rollout.verdict
        self.certificate: Optional[CaptureCertificate] = rollout.certificate
        self.command_log: Dict[int, dict] = dict(rollout.command_log)
        self._thetas = rollout.theta.copy()

    def __len__(self) -> int:
        return self.t.shape[0]

    def frame(self, idx: int) -> Frame:
        n = self.n
        ids = self.ids
        pursuers = tuple(Vec2(self.pos[idx, i, 0], self.pos[idx, i, 1]) for i in range(n))
        evader = Vec2(self.epos[idx, 0], self.epos[idx, 1])
        met = self.metrics[idx]
        theta_g = float(met[kernels.MET_THETA_G])
        ring = None
        if n >= 2:
            order = tuple(ids[j] for j in self.order[idx])
            overlap = float(met[kernels.MET_OVERLAP])
            ring = RingView(
                order=order,
                coverage=tuple(float(e) for e in self.eps[idx]),
                group_occupied=theta_g,
                escapable_total=TWO_PI - theta_g,
                success_rate=theta_g / TWO_PI,
                n_min=(TWO_PI - overlap) / float(self._thetas.min()),
            )
        controls = tuple(self._control_state(idx, i) for i in range(n))
        metrics = FrameMetrics(
            theta_G=theta_g,
            sum_r=float(met[kernels.MET_SUM_R]),
            P=theta_g / TWO_PI,
            min_dist=float(met[kernels.MET_MIN_R]),
            edge_lengths=tuple(float(e) for e in self.edges[idx]),
            evader_inside=bool(met[kernels.MET_INSIDE] != 0.0),
        )
        return Frame(
            t=float(self.t[idx]),
            pursuer_ids=ids,
            pursuers=pursuers,
            evader=evader,
            ring=ring,
            controls=controls,
            metrics=metrics,
        )

    def _control_state(self, idx: int, i: int) -> ControlState:
        c = self.ctrl[idx, i]
        return ControlState(
            alpha_rate=float(c[kernels.CTRL_ALPHA_RATE]),
            beta=float(c[kernels.CTRL_BETA]),
            delta=float(c[kernels.CTRL_DELTA]),
            gamma=float(c[kernels.CTRL_GAMMA]),
            k=float(c[kernels.CTRL_K]),
            h=float(c[kernels.CTRL_H]),
            v_surround=Vec2(float(c[kernels.CTRL_VSX]), float(c[kernels.CTRL_VSY])),
            v_hunt=Vec2(float(c[kernels.CTRL_VHX]), float(c[kernels.CTRL_VHY])),
            v_total=Vec2(float(c[kernels.CTRL_VTX]), float(c[kernels.CTRL_VTY])),
            v_correct=Vec2(float(c[kernels.CTRL_VMX]), float(c[kernels.CTRL_VMY])),
        )

    @property
    def frames(self) -> list:
        return [self.frame(i) for i in range(len(self))]

    def iter_frames(self) -> Iterator[Frame]:
        for i in range(len(self)):
            yield self.frame(i)


class Rollout:
    """Stepable simulation state for one scenario.

    ``run`` drives it to completion; the live session service drives it one
    tick at a time at wall-clock pace. External-evader commands are applied at
    tick boundaries and logged by tick index, which makes sessions replayable:
    passing the recorded ``command_log`` reproduces the identical trace.
    """

    def __init__(
        self,
        scenario: ScenarioDoc,
        config: Optional[SimConfig] = None,
        command_log: Optional[Dict[int, dict]] = None,
    ):
        validate_scenario(scenario)
        self.scenario = scenario
        self.config = config if config is not None else config_from_scenario(scenario)
        cfg = self.config

        pursuers = scenario.pursuers  # already sorted by id
        self.n = len(pursuers)
        self.ids = tuple(p.id for p in pursuers)
        self._index_of = {pid: i for i, pid in enumerate(self.ids)}
        self.specs = tuple(
            PursuerSpec(
                id=p.id,
                max_speed=p.max_speed,
                speed_ratio=p.max_speed / scenario.evader.max_speed,
            )
            for p in pursuers
        )

        n = self.n
        self.px = np.array([p.position.x for p in pursuers], dtype=np.float64)
        self.py = np.array([p.position.y for p in pursuers], dtype=np.float64)
        self.ex = float(scenario.evader_position.x)
        self.ey = float(scenario.evader_position.y)
        self.lam = np.array([s.speed_ratio for s in self.specs], dtype=np.float64)
        self.vmax = np.array([s.max_speed for s in self.specs], dtype=np.float64)
        self.theta = np.array([occupied_angle(l) for l in self.lam], dtype=np.float64)

        self._build_neighbors()

        self.strategy = build_strategy(scenario.evader, cfg.dt)
        self._command_log_in = dict(command_log) if command_log is not None else None
        self.command_log: Dict[int, dict] = {}
        self._live_pending: Optional[dict] = None

        self.total_steps = int(round(cfg.horizon / cfg.dt))
        cap = self.total_steps + 2
        self.buf_t = np.zeros(cap, dtype=np.float64)
        self.buf_pos = np.zeros((cap, n, 2), dtype=np.float64)
        self.buf_epos = np.zeros((cap, 2), dtype=np.float64)
        self.buf_order = np.zeros((cap, n), dtype=np.int32)
        self.buf_eps = np.zeros((cap, n), dtype=np.float64)
        self.buf_ctrl = np.zeros((cap, n, kernels.N_CTRL), dtype=np.float64)
        self.n_edges = n if n >= 2 else 0
        self.buf_edges = np.zeros((cap, self.n_edges), dtype=np.float64)
        self.buf_metrics = np.zeros((cap, kernels.N_MET), dtype=np.float64)

        self._r = np.zeros(n, dtype=np.float64)
        self._alpha = np.zeros(n, dtype=np.float64)
        self._order = np.zeros(n, dtype=np.int32)
        self._eps = np.zeros(n, dtype=np.float64)
        self._ctrl = np.zeros((n, kernels.N_CTRL), dtype=np.float64)
        self._edges = np.zeros(max(self.n_edges, 1), dtype=np.float64)
        self._metrics = np.zeros(kernels.N_MET, dtype=np.float64)
        self._npx = np.zeros(n, dtype=np.float64)
        self._npy = np.zeros(n, dtype=np.float64)

        self.certificate: Optional[CaptureCertificate] = None
        if cfg.mode == "sp5":
            self.certificate = theorem2_certificate(
                positions={pid: Vec2(self.px[i], self.py[i]) for pid, i in self._index_of.items()},
                evader=Vec2(self.ex, self.ey),
                field_params=cfg.fields,
                capture_params=cfg.capture,
                neighbor_sets=self.neighbor_sets,
            )

        self.tick_index = 0
        self.frames_recorded = 0
        self.verdict: Optional[Verdict] = None
        status, aux = self._eval_record(0.0)
        if status != kernels.STATUS_OK:
            raise ScenarioValidationError(
                [("pursuers", f"initial frame evaluation failed for pursuer {self.ids[aux]}")]
            )

    # -- construction helpers -------------------------------------------------

    def _build_neighbors(self) -> None:
        cfg = self.config
        n = self.n
        scenario = self.scenario

        # visibility mask (fixed at game start)
        omega_mask = np.zeros((n, n), dtype=np.uint8)
        if scenario.omega is not None:
            for pid, others in scenario.omega.items():
                i = self._index_of[pid]
                for q in others:
                    omega_mask[i, self._index_of[q]] = 1
        elif cfg.sensing_radius is not None:
            rad = cfg.sensing_radius
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    dx = self.px[i] - self.px[j]
                    dy = self.py[i] - self.py[j]
                    if math.sqrt(dx * dx + dy * dy) <= rad:
                        omega_mask[i, j] = 1
        self.omega_mask = omega_mask

        # initial ring order defines the pursuer polygon and its maintained edges
        ring = sorted(
            range(n),
            key=lambda i: (
                to_local_polar(Vec2(self.px[i], self.py[i]), Vec2(self.ex, self.ey)).alpha,
                self.ids[i],
            ),
        )
        self.initial_ring = tuple(ring)
        s_prev = np.zeros(n, dtype=np.int32)
        s_next = np.zeros(n, dtype=np.int32)
        for k, i in enumerate(ring):
            s_prev[i] = ring[(k - 1) % n]
            s_next[i] = ring[(k + 1) % n]
        if scenario.polygon is not None:
            for pid, (a, b) in scenario.polygon.items():
                i = self._index_of[pid]
                s_prev[i] = self._index_of[a]
                s_next[i] = self._index_of[b]
        self.s_prev = s_prev
        self.s_next = s_next

        if cfg.mode == "sp5":
            self.edge_a = np.array(ring, dtype=np.int32)
            self.edge_b = np.array([ring[(k + 1) % n] for k in range(n)], dtype=np.int32)
            self.poly_order = np.array(ring, dtype=np.int32)
        else:
            self.edge_a = None
            self.edge_b = None
            self.poly_order = None

        self.neighbor_sets = {
            pid: NeighborSets(
                omega=frozenset(
                    self.ids[j] for j in range(n) if omega_mask[self._index_of[pid], j]
                ),
                polygon=(
                    self.ids[s_prev[self._index_of[pid]]],
                    self.ids[s_next[self._index_of[pid]]],
                ),
            )
            for pid in self.ids
        }

    # -- stepping -------------------------------------------------------------

    @property
    def finished(self) -> bool:
        return self.verdict is not None

    @property
    def t(self) -> float:
        return float(self.buf_t[self.frames_recorded - 1])

    def submit_command(self, command: dict) -> None:
        """Queue an external-evader command for the next tick boundary."""
        self._live_pending = dict(command)

    def _eval_record(self, t: float) -> Tuple[int, int]:
        cfg = self.config
        f = cfg.fields
        status, aux = kernels.frame_eval(
            self.px, self.py, self.ex, self.ey,
            self.lam, self.vmax, self.theta,
            cfg.mode == "sp5",
            self.s_prev, self.s_next, self.omega_mask,
            self.edge_a, self.edge_b, self.poly_order,
            f.R_c if f else 0.0, f.R_f if f else 0.0,
            f.R_o if f else 0.0, f.R_b if f else 0.0,
            f.b if f else 0.0,
            self._r, self._alpha, self._order, self._eps,
            self._ctrl, self._edges, self._metrics,
        )
        if status != kernels.STATUS_OK:
            return status, aux
        m = self.frames_recorded
        self.buf_t[m] = t
        self.buf_pos[m, :, 0] = self.px
        self.buf_pos[m, :, 1] = self.py
        self.buf_epos[m, 0] = self.ex
        self.buf_epos[m, 1] = self.ey
        self.buf_order[m] = self._order
        self.buf_eps[m] = self._eps
        self.buf_ctrl[m] = self._ctrl
        self.buf_edges[m] = self._edges[: self.n_edges]
        self.buf_metrics[m] = self._metrics
        self.frames_recorded = m + 1
        return status, aux

    def tick(self) -> bool:
        """Advance one step. Returns False once the run has ended."""
        if self.finished:
            return False
        cfg = self.config
        k = self.tick_index
        if k >= self.total_steps:
            self.verdict = Verdict(kind="horizon_exceeded")
            return False

        cmd = None
        if self._command_log_in is not None and k in self._command_log_in:
            cmd = self._command_log_in[k]
        if self._live_pending is not None:
            cmd = self._live_pending
            self._live_pending = None
        if cmd is not None and isinstance(self.strategy, ExternalStrategy):
            self.strategy.submit(cmd)
            self.command_log[k] = dict(cmd)

        t = self.buf_t[self.frames_recorded - 1]
        evx, evy = self.strategy.velocity(
            k, float(t), self.ex, self.ey, self.px, self.py, self._r
        )

        cap, frac = kernels.advance(
            self.px, self.py, self.ex, self.ey,
            self._ctrl, evx, evy, cfg.dt, cfg.capture.d_c,
            self._npx, self._npy,
        )

        if cap >= 0:
            # terminal frame at the crossing time
            step = cfg.dt * frac
            for i in range(self.n):
                self.px[i] = self.px[i] + self._ctrl[i, kernels.CTRL_VTX] * step
                self.py[i] = self.py[i] + self._ctrl[i, kernels.CTRL_VTY] * step
            self.ex = self.ex + evx * step
            self.ey = self.ey + evy * step
            t_c = k * cfg.dt + step
            status, aux = self._eval_record(t_c)
            if status == kernels.STATUS_OVERFLOW:
                self.verdict = Verdict(
                    kind="error",
                    detail=f"potential overflow at pursuer {self.ids[aux]} during capture step",
                )
                return False
            self.verdict = Verdict(kind="captured", by=self.ids[cap], t_c=t_c)
            return False

        self.px[:] = self._npx
        self.py[:] = self._npy
        self.ex = self.ex + evx * cfg.dt
        self.ey = self.ey + evy * cfg.dt
        self.tick_index = k + 1
        status, aux = self._eval_record(self.tick_index * cfg.dt)
        if status == kernels.STATUS_DEGENERATE:
            self.verdict = Verdict(
                kind="captured", by=self.ids[aux], t_c=self.tick_index * cfg.dt
            )
            return False
        if status == kernels.STATUS_OVERFLOW:
            self.verdict = Verdict(
                kind="error",
                detail=f"potential overflow at pursuer {self.ids[aux]} "
                f"at t={self.tick_index * cfg.dt:.6g}",
            )
            return False
        if self.tick_index >= self.total_steps:
            self.verdict = Verdict(kind="horizon_exceeded")
            return False
        return True

    def run(self) -> SimTrace:
        while self.tick():
            pass
        return SimTrace(self)

    def trace(self) -> SimTrace:
        if self.verdict is None:
            raise RuntimeError("rollout has not finished")
        return SimTrace(self)

    def current_frame(self) -> Frame:
        """Frame object for the most recently recorded instant (no buffer copy)."""
        return _RolloutFrameView(self).frame(self.frames_recorded - 1)


class _RolloutFrameView(SimTrace):
    """SimTrace facade over live rollout buffers (no copy, no super().__init__)."""

    def __init__(self, rollout: Rollout):
        m = rollout.frames_recorded
        self.ids = tuple(rollout.ids)
        self.n = rollout.n
        self.mode = rollout.config.mode
        self.scenario = rollout.scenario
        self.config = rollout.config
        self.backend = kernels.BACKEND
        self.t = rollout.buf_t[:m]
        self.pos = rollout.buf_pos[:m]
        self.epos = rollout.buf_epos[:m]
        self.order = rollout.buf_order[:m]
        self.eps = rollout.buf_eps[:m]
        self.ctrl = rollout.buf_ctrl[:m]
        self.edges = rollout.buf_edges[:m]
        self.metrics = rollout.buf_metrics[:m]
        self.verdict = rollout.verdict
        self.certificate = rollout.certificate
        self.command_log = rollout.command_log
        self._thetas = rollout.theta


def run(scenario: ScenarioDoc, config: Optional[SimConfig] = None,
        command_log: Optional[Dict[int, dict]] = None) -> SimTrace:
    """Run a scenario to capture, horizon, or error. Deterministic."""
    return Rollout(scenario, config, command_log).run()


def step(
    frame: Frame,
    specs: Sequence[PursuerSpec],
    strategy,
    config: SimConfig,
    context: Optional[Rollout] = None,
    tick: int = 0,
) -> Frame:
    """Advance a single frame by one tick (functional form of the loop body).

    Uses the same kernel as ``run``; with ``context`` (a Rollout) the fixed
    neighbor structures of that run apply, otherwise instantaneous ring
    adjacency. Mainly useful for tests and interactive exploration; ``run``
    is the batch driver.
    """
    n = len(frame.pursuers)
    px = np.array([p.x for p in frame.pursuers], dtype=np.float64)
    py = np.array([p.y for p in frame.pursuers], dtype=np.float64)
    ex, ey = frame.evader.x, frame.evader.y
    lam = np.array([s.speed_ratio for s in specs], dtype=np.float64)
    vmax = np.array([s.max_speed for s in specs], dtype=np.float64)
    theta = np.array([occupied_angle(l) for l in lam], dtype=np.float64)
    ids = tuple(s.id for s in specs)

    if context is not None:
        s_prev, s_next = context.s_prev, context.s_next
        omega = context.omega_mask
        edge_a, edge_b, poly_order = context.edge_a, context.edge_b, context.poly_order
    else:
        s_prev = np.zeros(n, dtype=np.int32)
        s_next = np.zeros(n, dtype=np.int32)
        omega = np.zeros((n, n), dtype=np.uint8)
        edge_a = edge_b = poly_order = None

    f = config.fields
    r = np.zeros(n)
    alpha = np.zeros(n)
    order = np.zeros(n, dtype=np.int32)
    eps = np.zeros(n)
    ctrl = np.zeros((n, kernels.N_CTRL))
    n_edges = n if n >= 2 else 0
    edges = np.zeros(max(n_edges, 1))
    metrics = np.zeros(kernels.N_MET)
    status, aux = kernels.frame_eval(
        px, py, ex, ey, lam, vmax, theta,
        config.mode == "sp5", s_prev, s_next, omega,
        edge_a, edge_b, poly_order,
        f.R_c if f else 0.0, f.R_f if f else 0.0,
        f.R_o if f else 0.0, f.R_b if f else 0.0, f.b if f else 0.0,
        r, alpha, order, eps, ctrl, edges, metrics,
    )
    if status == kernels.STATUS_DEGENERATE:
        raise DegeneratePositionError(f"pursuer {ids[aux]} coincides with the evader")
    if status == kernels.STATUS_OVERFLOW:
        raise PotentialOverflowError(f"potential overflow at pursuer {ids[aux]}")

    evx, evy = strategy.velocity(tick, frame.t, ex, ey, px, py, r)
    npx = np.zeros(n)
    npy = np.zeros(n)
    cap, frac = kernels.advance(
        px, py, ex, ey, ctrl, evx, evy, config.dt, config.capture.d_c, npx, npy
    )
    if cap >= 0:
        step_len = config.dt * frac
        for i in range(n):
            npx[i] = px[i] + ctrl[i, kernels.CTRL_VTX] * step_len
            npy[i] = py[i] + ctrl[i, kernels.CTRL_VTY] * step_len
        nex = ex + evx * step_len
        ney = ey + evy * step_len
        new_t = frame.t + step_len
    else:
        nex = ex + evx * config.dt
        ney = ey + evy * config.dt
        new_t = frame.t + config.dt

    # evaluate the new frame for its metrics/controls
    status2, aux2 = kernels.frame_eval(
        npx, npy, nex, ney, lam, vmax, theta,
        config.mode == "sp5", s_prev, s_next, omega,
        edge_a, edge_b, poly_order,
        f.R_c if f else 0.0, f.R_f if f else 0.0,
        f.R_o if f else 0.0, f.R_b if f else 0.0, f.b if f else 0.0,
        r, alpha, order, eps, ctrl, edges, metrics,
    )
    if status2 != kernels.STATUS_OK:
        raise DegeneratePositionError("degenerate frame after step")

    theta_g = float(metrics[kernels.MET_THETA_G])
    ring = None
    if n >= 2:
        overlap = float(metrics[kernels.MET_OVERLAP])
        ring = RingView(
            order=tuple(ids[j] for j in order),
            coverage=tuple(float(e) for e in eps),
            group_occupied=theta_g,
            escapable_total=TWO_PI - theta_g,
            success_rate=theta_g / TWO_PI,
            n_min=(TWO_PI - overlap) / float(theta.min()),
        )
    controls = []
    for i in range(n):
        c = ctrl[i]
        controls.append(
            ControlState(
                alpha_rate=float(c[kernels.CTRL_ALPHA_RATE]),
                beta=float(c[kernels.CTRL_BETA]),
                delta=float(c[kernels.CTRL_DELTA]),
                gamma=float(c[kernels.CTRL_GAMMA]),
                k=float(c[kernels.CTRL_K]),
                h=float(c[kernels.CTRL_H]),
                v_surround=Vec2(float(c[kernels.CTRL_VSX]), float(c[kernels.CTRL_VSY])),
                v_hunt=Vec2(float(c[kernels.CTRL_VHX]), float(c[kernels.CTRL_VHY])),
                v_total=Vec2(float(c[kernels.CTRL_VTX]), float(c[kernels.CTRL_VTY])),
                v_correct=Vec2(float(c[kernels.CTRL_VMX]), float(c[kernels.CTRL_VMY])),
            )
        )
    return Frame(
        t=new_t,
        pursuer_ids=ids,
        pursuers=tuple(Vec2(float(npx[i]), float(npy[i])) for i in range(n)),
        evader=Vec2(float(nex), float(ney)),
        ring=ring,
        controls=tuple(controls),
        metrics=FrameMetrics(
            theta_G=theta_g,
            sum_r=float(metrics[kernels.MET_SUM_R]),
            P=theta_g / TWO_PI,
            min_dist=float(metrics[kernels.MET_MIN_R]),
            edge_lengths=tuple(float(e) for e in edges[:n_edges]),
            evader_inside=bool(metrics[kernels.MET_INSIDE] != 0.0),
        ),
    )


METRIC_COLUMNS = ("t", "theta_G", "sum_r", "P", "min_dist", "edge_min", "edge_max")


def metrics_series(trace: SimTrace) -> Dict[str, np.ndarray]:
    """Aligned numeric columns for plotting or CSV export."""
    if len(trace) == 0:
        raise ValueError("empty trace")
    theta_g = trace.metrics[:, kernels.MET_THETA_G]
    cols = {
        "t": trace.t.copy(),
        "theta_G": theta_g.copy(),
        "sum_r": trace.metrics[:, kernels.MET_SUM_R].copy(),
        "P": theta_g / TWO_PI,
        "min_dist": trace.metrics[:, kernels.MET_MIN_R].copy(),
    }
    if trace.edges.shape[1] > 0:
        cols["edge_min"] = trace.edges.min(axis=1)
        cols["edge_max"] = trace.edges.max(axis=1)
    else:
        cols["edge_min"] = np.full(len(trace), math.nan)
        cols["edge_max"] = np.full(len(trace), math.nan)
    return cols
