"""Trace serialization and replay verification.

Two formats: ``columnar`` (one CSV header row plus one row per frame with the
metrics columns, 9 significant digits) for plotting, and ``structured`` (JSON
with full frames including per-pursuer controls, the scenario, config, verdict
and command log) for exact round-trips and replay. Structured serialization is
canonical (sorted keys, fixed separators), so identical runs produce byte-
identical files.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import List

import numpy as np

from . import kernels
from .capture import CaptureCertificate, CaptureParams
from .engine import METRIC_COLUMNS, Rollout, SimConfig, SimTrace, Verdict, metrics_series
from .errors import TraceFormatError
from .fields import FieldParams
from .scenario import scenario_from_dict, scenario_to_dict

TRACE_FORMAT = "pursuitring-trace-v1"


def _config_to_dict(config: SimConfig) -> dict:
    out = {
        "dt": config.dt,
        "horizon": config.horizon,
        "mode": config.mode,
        "seed": config.seed,
        "d_c": config.capture.d_c,
        "lambda_min": config.capture.lambda_min,
        "sensing_radius": config.sensing_radius,
    }
    if config.fields is not None:
        f = config.fields
        out["fields"] = {"R_c": f.R_c, "R_f": f.R_f, "R_o": f.R_o, "R_b": f.R_b, "b": f.b}
    return out


def _config_from_dict(raw: dict) -> SimConfig:
    fields = None
    if "fields" in raw:
        f = raw["fields"]
        fields = FieldParams(R_c=f["R_c"], R_f=f["R_f"], R_o=f["R_o"], R_b=f["R_b"], b=f["b"])
    return SimConfig(
        dt=raw["dt"],
        horizon=raw["horizon"],
        capture=CaptureParams(d_c=raw["d_c"], lambda_min=raw["lambda_min"]),
        fields=fields,
        mode=raw["mode"],
        seed=raw["seed"],
        sensing_radius=raw.get("sensing_radius"),
    )


def trace_to_dict(trace: SimTrace) -> dict:
    if len(trace) == 0:
        raise TraceFormatError("refusing to serialize an empty trace")
    frames = []
    for m in range(len(trace)):
        frames.append(
            {
                "t": float(trace.t[m]),
                "pursuers": trace.pos[m].tolist(),
                "evader": trace.epos[m].tolist(),
                "order": trace.order[m].tolist(),
                "coverage": trace.eps[m].tolist(),
                "controls": trace.ctrl[m].tolist(),
                "edges": trace.edges[m].tolist(),
                "metrics": trace.metrics[m].tolist(),
            }
        )
    cert = trace.certificate.to_dict() if trace.certificate is not None else None
    return {
        "format": TRACE_FORMAT,
        "backend": trace.backend,
        "ids": list(trace.ids),
        "scenario": scenario_to_dict(trace.scenario),
        "config": _config_to_dict(trace.config),
        "verdict": trace.verdict.to_dict(),
        "certificate": cert,
        "command_log": {str(k): v for k, v in sorted(trace.command_log.items())},
        "frames": frames,
    }


def dumps_structured(trace: SimTrace) -> str:
    return json.dumps(trace_to_dict(trace), sort_keys=True, separators=(",", ":"))


def trace_from_dict(raw: dict) -> SimTrace:
    if raw.get("format") != TRACE_FORMAT:
        raise TraceFormatError(f"unknown trace format {raw.get('format')!r}")
    frames = raw.get("frames", [])
    if not frames:
        raise TraceFormatError("trace has no frames")
    scenario = scenario_from_dict(raw["scenario"])
    config = _config_from_dict(raw["config"])
    ids = tuple(raw["ids"])
    n = len(ids)
    m = len(frames)
    t = np.array([f["t"] for f in frames], dtype=np.float64)
    pos = np.array([f["pursuers"] for f in frames], dtype=np.float64).reshape(m, n, 2)
    epos = np.array([f["evader"] for f in frames], dtype=np.float64)
    order = np.array([f["order"] for f in frames], dtype=np.int32)
    eps = np.array([f["coverage"] for f in frames], dtype=np.float64)
    ctrl = np.array([f["controls"] for f in frames], dtype=np.float64)
    n_edges = len(frames[0]["edges"])
    edges = np.array([f["edges"] for f in frames], dtype=np.float64).reshape(m, n_edges)
    metrics = np.array([f["metrics"] for f in frames], dtype=np.float64)
    vraw = raw["verdict"]
    verdict = Verdict(
        kind=vraw["kind"], by=vraw.get("by"), t_c=vraw.get("t_c"), detail=vraw.get("detail")
    )
    cert = None
    if raw.get("certificate") is not None:
        c = raw["certificate"]
        cert = CaptureCertificate(
            cond_edges_ok=c["cond_edges_ok"],
            cond_separation_ok=c["cond_separation_ok"],
            cond_radii_ok=c["cond_radii_ok"],
            cond_topology_ok=c["cond_topology_ok"],
            evader_inside=c["evader_inside"],
        )
    command_log = {int(k): v for k, v in raw.get("command_log", {}).items()}
    thetas = np.array(
        [2.0 * math.asin(p.max_speed / scenario.evader.max_speed) for p in scenario.pursuers]
    )

    obj = object.__new__(SimTrace)
    obj.ids = ids
    obj.n = n
    obj.mode = config.mode
    obj.scenario = scenario
    obj.config = config
    obj.backend = raw.get("backend", "unknown")
    obj.t = t
    obj.pos = pos
    obj.epos = epos
    obj.order = order
    obj.eps = eps
    obj.ctrl = ctrl
    obj.edges = edges
    obj.metrics = metrics
    obj.verdict = verdict
    obj.certificate = cert
    obj.command_log = command_log
    obj._thetas = thetas
    return obj


def save_trace(trace: SimTrace, path, format: str = "structured") -> None:
    """Write a trace file; ``format`` is "structured" (JSON) or "columnar" (CSV)."""
    p = Path(path)
    if len(trace) == 0:
        raise TraceFormatError("refusing to serialize an empty trace")
    try:
        if format == "structured":
            p.write_text(dumps_structured(trace) + "\n", encoding="utf-8")
        elif format == "columnar":
            cols = metrics_series(trace)
            lines = [",".join(METRIC_COLUMNS)]
            rows = len(trace)
            for m in range(rows):
                lines.append(",".join("%.9g" % cols[c][m] for c in METRIC_COLUMNS))
            p.write_text("\n".join(lines) + "\n", encoding="utf-8")
        else:
            raise ValueError(f"unknown trace format {format!r}")
    except OSError as exc:
        raise TraceFormatError(f"cannot write {p}: {exc}") from exc


def load_trace(path) -> SimTrace:
    p = Path(path)
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise TraceFormatError(f"cannot read {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"{p} is not valid JSON: {exc}") from exc
    return trace_from_dict(raw)


def replay_report(trace: SimTrace) -> List[str]:
    """Re-run the embedded scenario and verify the stored trace's invariants.

    Returns a list of human-readable violations (empty means the trace is
    internally consistent and reproducible).
    """
    violations: List[str] = []

    # internal invariants of the stored data
    theta_g = trace.metrics[:, kernels.MET_THETA_G]
    if np.any(theta_g > 2.0 * math.pi + 1e-9):
        violations.append("theta_G exceeds 2*pi")
    if np.any(np.diff(trace.t) <= 0):
        violations.append("frame times are not strictly increasing")

    vs = trace.ctrl[:, :, kernels.CTRL_VSX : kernels.CTRL_VSY + 1]
    vh = trace.ctrl[:, :, kernels.CTRL_VHX : kernels.CTRL_VHY + 1]
    dot = np.abs((vs * vh).sum(axis=2))
    scale = np.maximum(1.0, (vs * vs).sum(axis=2) * (vh * vh).sum(axis=2))
    if np.any(dot > 1e-9 * scale):
        violations.append("surround and hunt components are not orthogonal")

    vt = trace.ctrl[:, :, kernels.CTRL_VTX : kernels.CTRL_VTY + 1]
    speed = np.sqrt((vt * vt).sum(axis=2))
    vmax = np.array([p.max_speed for p in trace.scenario.pursuers])
    if trace.mode == "sp5":
        ok = (speed <= 1e-12) | (np.abs(speed - vmax[None, :]) <= 1e-9)
        if not np.all(ok):
            violations.append("sp5 speeds are neither zero nor the max speed")
    else:
        # the k=1 fallback holds exactly when delta == 0 (zero gap imbalance) or beta == 0
        delta = trace.ctrl[:, :, kernels.CTRL_DELTA]
        nonfallback = (delta != 0.0) & (trace.ctrl[:, :, kernels.CTRL_BETA] != 0.0)
        bad = nonfallback & (np.abs(speed - vmax[None, :]) > 1e-9)
        if np.any(bad):
            violations.append("sp2 non-fallback speeds differ from the max speed")

    min_dist = trace.metrics[:, kernels.MET_MIN_R]
    d_c = trace.config.capture.d_c
    if trace.verdict.kind == "captured":
        if min_dist[-1] > d_c + 1e-9:
            violations.append("captured verdict but final min distance exceeds d_c")
    elif trace.verdict.kind == "horizon_exceeded":
        if np.any(min_dist <= d_c):
            violations.append("horizon verdict but some frame is within the capture radius")

    # reproducibility: re-run and compare exactly
    rerun = Rollout(
        trace.scenario, trace.config,
        command_log=trace.command_log if trace.command_log else None,
    ).run()
    if len(rerun) != len(trace):
        violations.append(f"frame count differs on re-run ({len(rerun)} vs {len(trace)})")
    else:
        if not np.array_equal(rerun.t, trace.t):
            violations.append("frame times differ on re-run")
        if not np.array_equal(rerun.pos, trace.pos):
            violations.append("pursuer positions differ on re-run")
        if not np.array_equal(rerun.epos, trace.epos):
            violations.append("evader positions differ on re-run")
        if not np.array_equal(rerun.ctrl, trace.ctrl):
            violations.append("controls differ on re-run")
        if not np.array_equal(rerun.metrics, trace.metrics):
            violations.append("metrics differ on re-run")
    if (
        rerun.verdict.kind != trace.verdict.kind
        or rerun.verdict.by != trace.verdict.by
        or rerun.verdict.t_c != trace.verdict.t_c
    ):
        violations.append(
            f"verdict differs on re-run ({rerun.verdict} vs {trace.verdict})"
        )
    return violations
