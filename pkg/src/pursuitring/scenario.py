"""Scenario documents: schema, validation, JSON load/save, bundled fixtures.

A scenario is a single human-editable JSON file naming the pursuers (id,
position, max speed), the evader (position, max speed, strategy), the capture
radius, optional potential-field radii, neighbor visibility, and the sim
parameters. Validation reports every violation with its field path; loading
never half-succeeds.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Tuple

from .errors import ScenarioValidationError
from .evaders import STRATEGIES, EvaderSpec
from .fields import FieldParams
from .geometry import Vec2

SCENARIO_DIR_ENV = "PURSUITRING_SCENARIOS"


@dataclass(frozen=True)
class PursuerSetup:
    id: int
    position: Vec2
    max_speed: float


@dataclass(frozen=True)
class ScenarioDoc:
    name: str
    pursuers: Tuple[PursuerSetup, ...]
    evader_position: Vec2
    evader: EvaderSpec
    d_c: float
    dt: float = 0.01
    horizon: float = 120.0
    mode: str = "sp2"
    seed: int = 0
    fields: Optional[FieldParams] = None
    sensing_radius: Optional[float] = None
    omega: Optional[Dict[int, frozenset]] = None
    polygon: Optional[Dict[int, tuple]] = None

    def with_overrides(self, **kwargs) -> "ScenarioDoc":
        return replace(self, **kwargs)


def _finite_pair(value) -> bool:
    return (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, (int, float)) and math.isfinite(v) for v in value)
    )


def scenario_from_dict(raw: dict, name: str = "") -> ScenarioDoc:
    """Build a validated ScenarioDoc from parsed JSON.

    Raises:
        ScenarioValidationError: listing every (field path, reason) violation.
    """
    errors = []

    def fail(path, reason):
        errors.append((path, reason))

    pursuers = []
    plist = raw.get("pursuers")
    if not isinstance(plist, list) or not plist:
        fail("pursuers", "must be a nonempty list")
        plist = []
    seen_ids = set()
    for idx, entry in enumerate(plist):
        path = f"pursuers[{idx}]"
        if not isinstance(entry, dict):
            fail(path, "must be an object")
            continue
        pid = entry.get("id")
        if not isinstance(pid, int):
            fail(f"{path}.id", "must be an integer")
            continue
        if pid in seen_ids:
            fail(f"{path}.id", f"duplicate id {pid}")
            continue
        seen_ids.add(pid)
        pos = entry.get("position")
        if not _finite_pair(pos):
            fail(f"{path}.position", "must be a finite [x, y] pair")
            continue
        speed = entry.get("max_speed")
        if not isinstance(speed, (int, float)) or speed <= 0:
            fail(f"{path}.max_speed", "must be a positive number")
            continue
        pursuers.append(PursuerSetup(id=pid, position=Vec2(float(pos[0]), float(pos[1])),
                                     max_speed=float(speed)))
    pursuers.sort(key=lambda p: p.id)

    ev = raw.get("evader")
    evader_position = Vec2(0.0, 0.0)
    evader_spec = None
    if not isinstance(ev, dict):
        fail("evader", "must be an object")
    else:
        pos = ev.get("position")
        if not _finite_pair(pos):
            fail("evader.position", "must be a finite [x, y] pair")
        else:
            evader_position = Vec2(float(pos[0]), float(pos[1]))
        speed = ev.get("max_speed")
        if not isinstance(speed, (int, float)) or speed <= 0:
            fail("evader.max_speed", "must be a positive number")
            speed = 1.0
        strategy = ev.get("strategy", "flee")
        if strategy not in STRATEGIES:
            fail("evader.strategy", f"must be one of {', '.join(STRATEGIES)}")
            strategy = "static"
        waypoints = ev.get("waypoints", [])
        if strategy == "scripted":
            if not isinstance(waypoints, list) or not waypoints or not all(
                _finite_pair(w) for w in waypoints
            ):
                fail("evader.waypoints", "scripted strategy needs a list of [x, y] pairs")
                waypoints = [[0.0, 0.0]]
        gain = ev.get("flee_gain", 140.0)
        if not isinstance(gain, (int, float)) or gain < 0:
            fail("evader.flee_gain", "must be a nonnegative number")
            gain = 0.0
        evader_spec = EvaderSpec(
            max_speed=float(speed),
            strategy=strategy,
            flee_gain=float(gain),
            include_origin_term=bool(ev.get("include_origin_term", True)),
            waypoints=tuple((float(w[0]), float(w[1])) for w in waypoints),
            seed=int(ev.get("seed", 0)),
            heading_hold=float(ev.get("heading_hold", 1.0)),
        )

    cap = raw.get("capture")
    d_c = 1.0
    if not isinstance(cap, dict) or not isinstance(cap.get("d_c"), (int, float)) or cap["d_c"] <= 0:
        fail("capture.d_c", "must be a positive number")
    else:
        d_c = float(cap["d_c"])

    fields = None
    fraw = raw.get("fields")
    if fraw is not None:
        if not isinstance(fraw, dict):
            fail("fields", "must be an object")
        else:
            vals = {}
            for key in ("R_c", "R_f", "R_o", "R_b"):
                v = fraw.get(key)
                if not isinstance(v, (int, float)) or v <= 0:
                    fail(f"fields.{key}", "must be a positive number")
                else:
                    vals[key] = float(v)
            bval = fraw.get("b", 1.0)
            if not isinstance(bval, (int, float)) or bval <= 0:
                fail("fields.b", "must be a positive number")
                bval = 1.0
            if len(vals) == 4:
                if not vals["R_o"] < vals["R_b"] < vals["R_c"] < vals["R_f"]:
                    fail("fields", "radii must satisfy R_o < R_b < R_c < R_f")
                else:
                    fields = FieldParams(
                        R_c=vals["R_c"], R_f=vals["R_f"],
                        R_o=vals["R_o"], R_b=vals["R_b"], b=float(bval),
                    )

    sensing_radius = None
    omega = None
    polygon = None
    nraw = raw.get("neighbors")
    if nraw is not None:
        if not isinstance(nraw, dict):
            fail("neighbors", "must be an object")
        else:
            sr = nraw.get("sensing_radius")
            if sr is not None:
                if not isinstance(sr, (int, float)) or sr <= 0:
                    fail("neighbors.sensing_radius", "must be a positive number")
                else:
                    sensing_radius = float(sr)
            oraw = nraw.get("omega")
            if oraw is not None:
                omega = {}
                for key, others in oraw.items():
                    try:
                        pid = int(key)
                    except (TypeError, ValueError):
                        fail(f"neighbors.omega.{key}", "keys must be pursuer ids")
                        continue
                    if pid not in seen_ids:
                        fail(f"neighbors.omega.{key}", "unknown pursuer id")
                        continue
                    if not isinstance(others, list) or not all(
                        isinstance(o, int) and o in seen_ids and o != pid for o in others
                    ):
                        fail(f"neighbors.omega.{key}", "must list other existing pursuer ids")
                        continue
                    omega[pid] = frozenset(others)
                if omega is not None and len(omega) != len(seen_ids):
                    fail("neighbors.omega", "must cover every pursuer id")
            praw = nraw.get("polygon")
            if praw is not None:
                polygon = {}
                for key, pair in praw.items():
                    try:
                        pid = int(key)
                    except (TypeError, ValueError):
                        fail(f"neighbors.polygon.{key}", "keys must be pursuer ids")
                        continue
                    if pid not in seen_ids:
                        fail(f"neighbors.polygon.{key}", "unknown pursuer id")
                        continue
                    if (
                        not isinstance(pair, list)
                        or len(pair) != 2
                        or not all(isinstance(o, int) and o in seen_ids and o != pid for o in pair)
                    ):
                        fail(f"neighbors.polygon.{key}", "must be a pair of other pursuer ids")
                        continue
                    polygon[pid] = (pair[0], pair[1])
                if polygon is not None and len(polygon) != len(seen_ids):
                    fail("neighbors.polygon", "must cover every pursuer id")

    sraw = raw.get("sim", {})
    dt = 0.01
    horizon = 120.0
    mode = "sp2"
    seed = 0
    if not isinstance(sraw, dict):
        fail("sim", "must be an object")
    else:
        dt = sraw.get("dt", 0.01)
        horizon = sraw.get("horizon", 120.0)
        mode = sraw.get("mode", "sp2")
        seed = sraw.get("seed", 0)
        if not isinstance(dt, (int, float)) or dt <= 0:
            fail("sim.dt", "must be a positive number")
            dt = 0.01
        if not isinstance(horizon, (int, float)) or horizon <= dt:
            fail("sim.horizon", "must exceed dt")
            horizon = dt * 10
        if mode not in ("sp2", "sp5"):
            fail("sim.mode", "must be sp2 or sp5")
            mode = "sp2"
        if not isinstance(seed, int):
            fail("sim.seed", "must be an integer")
            seed = 0

    doc = ScenarioDoc(
        name=str(raw.get("name", name)),
        pursuers=tuple(pursuers),
        evader_position=evader_position,
        evader=evader_spec
        if evader_spec is not None
        else EvaderSpec(max_speed=1.0, strategy="static"),
        d_c=d_c,
        dt=float(dt),
        horizon=float(horizon),
        mode=mode,
        seed=seed,
        fields=fields,
        sensing_radius=sensing_radius,
        omega=omega,
        polygon=polygon,
    )

    errors.extend(_semantic_violations(doc))
    if errors:
        raise ScenarioValidationError(errors)
    return doc


def _semantic_violations(doc: ScenarioDoc) -> list:
    """Cross-field rules: the game must start in a legal state."""
    errors = []
    if doc.pursuers:
        for p in doc.pursuers:
            if p.max_speed >= doc.evader.max_speed:
                errors.append(
                    (f"pursuers[id={p.id}].max_speed",
                     "pursuers must be slower than the evader")
                )
            d = (p.position - doc.evader_position).norm()
            if d <= doc.d_c:
                errors.append(
                    (f"pursuers[id={p.id}].position",
                     f"starts within the capture radius (distance {d:.6g})")
                )
        pts = {}
        for p in doc.pursuers:
            key = (p.position.x, p.position.y)
            if key in pts:
                errors.append(
                    (f"pursuers[id={p.id}].position",
                     f"coincides with pursuer id={pts[key]}")
                )
            else:
                pts[key] = p.id
    if doc.mode == "sp5":
        if doc.fields is None:
            errors.append(("sim.mode", "sp5 requires a fields section"))
        if len(doc.pursuers) < 3:
            errors.append(("sim.mode", "sp5 needs at least three pursuers"))
        if doc.sensing_radius is None and doc.omega is None:
            errors.append(
                ("neighbors", "sp5 needs sensing_radius or explicit omega lists")
            )
    return errors


def validate_scenario(doc: ScenarioDoc) -> None:
    """Re-check semantic rules on an already-built document."""
    errors = _semantic_violations(doc)
    if errors:
        raise ScenarioValidationError(errors)


def scenario_to_dict(doc: ScenarioDoc) -> dict:
    out = {
        "name": doc.name,
        "pursuers": [
            {"id": p.id, "position": [p.position.x, p.position.y], "max_speed": p.max_speed}
            for p in doc.pursuers
        ],
        "evader": {
            "position": [doc.evader_position.x, doc.evader_position.y],
            "max_speed": doc.evader.max_speed,
            "strategy": doc.evader.strategy,
            "flee_gain": doc.evader.flee_gain,
            "include_origin_term": doc.evader.include_origin_term,
            "seed": doc.evader.seed,
            "heading_hold": doc.evader.heading_hold,
        },
        "capture": {"d_c": doc.d_c},
        "sim": {"dt": doc.dt, "horizon": doc.horizon, "mode": doc.mode, "seed": doc.seed},
    }
    if doc.evader.waypoints:
        out["evader"]["waypoints"] = [[x, y] for x, y in doc.evader.waypoints]
    if doc.fields is not None:
        f = doc.fields
        out["fields"] = {"R_c": f.R_c, "R_f": f.R_f, "R_o": f.R_o, "R_b": f.R_b, "b": f.b}
    neighbors = {}
    if doc.sensing_radius is not None:
        neighbors["sensing_radius"] = doc.sensing_radius
    if doc.omega is not None:
        neighbors["omega"] = {str(k): sorted(v) for k, v in sorted(doc.omega.items())}
    if doc.polygon is not None:
        neighbors["polygon"] = {str(k): list(v) for k, v in sorted(doc.polygon.items())}
    if neighbors:
        out["neighbors"] = neighbors
    return out


def load_scenario(path) -> ScenarioDoc:
    """Load and validate a scenario file.

    Raises:
        ScenarioValidationError: parse failure or any schema/semantic violation.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioValidationError([(str(p), f"cannot read file: {exc}")]) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError([(str(p), f"not valid JSON: {exc}")]) from exc
    if not isinstance(raw, dict):
        raise ScenarioValidationError([(str(p), "top level must be an object")])
    return scenario_from_dict(raw, name=p.stem)


def save_scenario(doc: ScenarioDoc, path) -> None:
    Path(path).write_text(
        json.dumps(scenario_to_dict(doc), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def bundled_scenario_names() -> list:
    files = resources.files("pursuitring") / "scenarios"
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def resolve_scenario(ref: str) -> ScenarioDoc:
    """Resolve a CLI scenario reference: path, $PURSUITRING_SCENARIOS entry, or bundled name."""
    p = Path(ref)
    if p.exists():
        return load_scenario(p)
    env_dir = os.environ.get(SCENARIO_DIR_ENV)
    if env_dir:
        candidate = Path(env_dir) / f"{ref}.json"
        if candidate.exists():
            return load_scenario(candidate)
    files = resources.files("pursuitring") / "scenarios"
    candidate = files / f"{ref}.json"
    if candidate.is_file():
        raw = json.loads(candidate.read_text(encoding="utf-8"))
        return scenario_from_dict(raw, name=ref)
    raise ScenarioValidationError(
        [(ref, f"no such file, and no bundled scenario by that name "
               f"(bundled: {', '.join(bundled_scenario_names())})")]
    )
