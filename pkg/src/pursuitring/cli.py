"""Command-line interface.

Subcommands: ``run`` a scenario and optionally save its trace, ``check``
capture-condition certificates, ``replay`` a saved trace against the engine,
``sweep`` capture rates over a (pursuer count, speed ratio) grid, and
``serve`` the live steerable-evader session.

Exit status: 0 on success, 1 on a reported error (first stderr line carries a
machine-readable ``error category=...``), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import random
import sys
from pathlib import Path

from .capture import CaptureParams
from .engine import metrics_series, run
from .errors import (
    PursuitError,
    ScenarioValidationError,
    TraceFormatError,
    VacuousConditionError,
)
from .evaders import EvaderSpec
from .geometry import TWO_PI, Vec2, required_pursuer_count, ring_view, to_local_polar
from .scenario import PursuerSetup, ScenarioDoc, resolve_scenario
from .traceio import load_trace, replay_report, save_trace


def _fail(category: str, message: str) -> int:
    print(f"error category={category}: {message}", file=sys.stderr)
    return 1


def _apply_overrides(doc: ScenarioDoc, args) -> ScenarioDoc:
    over = {}
    if getattr(args, "dt", None) is not None:
        over["dt"] = args.dt
    if getattr(args, "horizon", None) is not None:
        over["horizon"] = args.horizon
    if getattr(args, "no_origin_term", False):
        over["evader"] = EvaderSpec(
            max_speed=doc.evader.max_speed,
            strategy=doc.evader.strategy,
            flee_gain=doc.evader.flee_gain,
            include_origin_term=False,
            waypoints=doc.evader.waypoints,
            seed=doc.evader.seed,
            heading_hold=doc.evader.heading_hold,
        )
    return doc.with_overrides(**over) if over else doc


def cmd_run(args) -> int:
    doc = _apply_overrides(resolve_scenario(args.scenario), args)
    trace = run(doc)
    v = trace.verdict
    print(f"scenario {doc.name}: {v.kind}", end="")
    if v.kind == "captured":
        print(f" by pursuer {v.by} at t={v.t_c:.4f} s", end="")
    if v.kind == "error":
        print(f" ({v.detail})", end="")
    print(f"  [{len(trace)} frames, backend {trace.backend}]")
    cols = metrics_series(trace)
    print(
        f"theta_G: start {cols['theta_G'][0]:.4f}, end {cols['theta_G'][-1]:.4f}, "
        f"max {cols['theta_G'].max():.4f} (2*pi = {TWO_PI:.4f})"
    )
    print(f"min distance: end {cols['min_dist'][-1]:.4f}")
    if trace.certificate is not None:
        print(f"certificate: guaranteed={trace.certificate.guaranteed}")
    if args.trace:
        save_trace(trace, args.trace, format=args.format)
        print(f"trace written to {args.trace} ({args.format})")
    return 0 if v.kind != "error" else _fail("engine", v.detail or "engine error")


def cmd_check(args) -> int:
    doc = resolve_scenario(args.scenario)
    evader = doc.evader_position
    lambda_min = min(p.max_speed for p in doc.pursuers) / doc.evader.max_speed
    print(f"scenario {doc.name}: {len(doc.pursuers)} pursuers, lambda_min={lambda_min:.4f}")

    polars = [to_local_polar(p.position, evader) for p in doc.pursuers]
    ratios = [p.max_speed / doc.evader.max_speed for p in doc.pursuers]
    if len(doc.pursuers) >= 2:
        rv = ring_view(polars, ratios, ids=[p.id for p in doc.pursuers])
        print(
            f"initial ring: theta_G={rv.group_occupied:.4f} "
            f"({100 * rv.success_rate:.1f}% coverage), escapable={rv.escapable_total:.4f}"
        )

    circumradius = max(p.r for p in polars)
    try:
        need = required_pursuer_count(doc.d_c, lambda_min, circumradius)
        print(
            f"pursuer-count bound (circumradius {circumradius:.3f}): "
            f"n > {math.pi / math.asin(doc.d_c * lambda_min / circumradius):.3f} -> n >= {need}"
        )
    except VacuousConditionError:
        print(
            f"pursuer-count bound (circumradius {circumradius:.3f}): vacuous, any n >= 3 suffices"
        )

    if doc.fields is None:
        print("certificate: not applicable (no field parameters)")
        return 0
    from .capture import theorem2_certificate
    from .engine import Rollout

    roll = Rollout(doc)
    cert = roll.certificate
    if cert is None:
        # scenario carries field params but runs in plain mode; evaluate anyway
        cert = theorem2_certificate(
            positions={p.id: p.position for p in doc.pursuers},
            evader=evader,
            field_params=doc.fields,
            capture_params=CaptureParams(d_c=doc.d_c, lambda_min=lambda_min),
            neighbor_sets=roll.neighbor_sets,
        )
    print("certificate (guaranteed-capture preconditions):")
    for key, val in cert.to_dict().items():
        print(f"  {key}: {val}")
    return 0


def cmd_replay(args) -> int:
    trace = load_trace(args.trace)
    violations = replay_report(trace)
    if not violations:
        print(f"replay clean: {len(trace)} frames, verdict {trace.verdict.kind}")
        return 0
    print(f"replay found {len(violations)} violation(s):")
    for v in violations:
        print(f"  - {v}")
    return _fail("replay-violation", violations[0])


def _sweep_seed(seed: int, n: int, ratio: float, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{n}:{ratio:.6f}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _random_scenario(n: int, ratio: float, rng: random.Random, dt: float, horizon: float) -> ScenarioDoc:
    evader_speed = 2.0
    pursuers = []
    for i in range(n):
        angle = rng.uniform(0.0, TWO_PI)
        radius = rng.uniform(10.0, 40.0)
        pursuers.append(
            PursuerSetup(
                id=i + 1,
                position=Vec2(radius * math.cos(angle), radius * math.sin(angle)),
                max_speed=ratio * evader_speed,
            )
        )
    return ScenarioDoc(
        name=f"sweep_n{n}_l{ratio:.3f}",
        pursuers=tuple(sorted(pursuers, key=lambda p: p.id)),
        evader_position=Vec2(0.0, 0.0),
        evader=EvaderSpec(max_speed=evader_speed, strategy="flee", flee_gain=140.0),
        d_c=1.0,
        dt=dt,
        horizon=horizon,
        mode="sp2",
        sensing_radius=100.0,
    )


def cmd_sweep(args) -> int:
    rows = []
    print(f"{'n':>4} {'ratio':>7} {'trials':>7} {'captured':>9} {'rate':>6}")
    for n in args.counts:
        for ratio in args.ratios:
            captures = 0
            for trial in range(args.trials):
                rng = random.Random(_sweep_seed(args.seed, n, ratio, trial))
                doc = _random_scenario(n, ratio, rng, args.dt, args.horizon)
                trace = run(doc)
                if trace.verdict.kind == "captured":
                    captures += 1
            rate = captures / args.trials
            rows.append((n, ratio, args.trials, captures, rate))
            print(f"{n:>4} {ratio:>7.3f} {args.trials:>7} {captures:>9} {rate:>6.2f}")
    if args.out:
        lines = ["n,ratio,trials,captured,rate"]
        lines += [f"{n},{r:.6f},{t},{c},{rate:.6f}" for n, r, t, c, rate in rows]
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"table written to {args.out}")
    return 0


def cmd_serve(args) -> int:
    doc = resolve_scenario(args.scenario)
    if doc.evader.strategy != "external":
        doc = doc.with_overrides(
            evader=EvaderSpec(
                max_speed=doc.evader.max_speed,
                strategy="external",
                flee_gain=doc.evader.flee_gain,
            )
        )
    if args.dt is not None:
        doc = doc.with_overrides(dt=args.dt)
    from .service import serve

    print(f"serving {doc.name} on ws://{args.host}:{args.port}/ws (pace {args.pace})")
    if args.ui:
        print(f"UI at http://{args.host}:{args.port}/")
    serve(
        doc,
        host=args.host,
        port=args.port,
        pace=args.pace,
        ui_dir=args.ui,
        log_dir=args.log_dir,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pursuitring",
        description="Multi-pursuer single-evader pursuit simulation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="Run a scenario and print its outcome")
    p.add_argument("scenario", help="Scenario path or bundled name (scenario_a/b/c)")
    p.add_argument("--trace", help="Write the trace to this path")
    p.add_argument(
        "--format", choices=("structured", "columnar"), default="structured",
        help="Trace file format (default structured JSON)",
    )
    p.add_argument("--dt", type=float, help="Override time step")
    p.add_argument("--horizon", type=float, help="Override horizon (seconds)")
    p.add_argument(
        "--no-origin-term", action="store_true",
        help="Drop the origin-dependent term from the flee law",
    )
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="Print capture-condition certificate and bounds")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("replay", help="Verify a structured trace against the engine")
    p.add_argument("trace")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("sweep", help="Capture-rate table over pursuer count and speed ratio")
    p.add_argument("--counts", type=int, nargs="+", default=[3, 4, 6])
    p.add_argument("--ratios", type=float, nargs="+", default=[0.7, 0.8, 0.9, 0.95])
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dt", type=float, default=0.02)
    p.add_argument("--horizon", type=float, default=60.0)
    p.add_argument("--out", help="Also write the table as CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="Host a live session with a steerable evader")
    p.add_argument("scenario")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--pace", type=float, default=1.0, help="Real-time factor (1.0 = wall clock)")
    p.add_argument("--dt", type=float, help="Override time step")
    p.add_argument("--ui", help="Directory with the built browser UI to serve at /")
    p.add_argument("--log-dir", help="Save traces and command logs here on session end")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioValidationError as exc:
        print(f"error category=scenario-validation: {exc}", file=sys.stderr)
        for path, reason in exc.violations:
            print(f"  {path}: {reason}", file=sys.stderr)
        return 1
    except TraceFormatError as exc:
        return _fail("trace-format", str(exc))
    except PursuitError as exc:
        return _fail("pursuit", str(exc))
    except OSError as exc:
        return _fail("io", str(exc))


if __name__ == "__main__":
    sys.exit(main())
