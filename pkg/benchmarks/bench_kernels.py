#!/usr/bin/env python3
"""Benchmark the compiled tick kernel against the pure-Python twin.

Runs the bundled guaranteed-capture scenario (12 pursuers, constrained mode)
and the three-pursuer plain scenario through both backends and reports
per-tick times and the speedup.

Usage: python benchmarks/bench_kernels.py [--ticks 2000]
"""

import argparse
import time

from pursuitring import kernels, resolve_scenario
from pursuitring.engine import Rollout
from pursuitring.kernels import _ref

try:
    from pursuitring.kernels import _fast
except ImportError:
    _fast = None


def time_backend(mod, scenario, ticks):
    orig = (kernels.frame_eval, kernels.advance)
    kernels.frame_eval, kernels.advance = mod.frame_eval, mod.advance
    try:
        roll = Rollout(scenario)
        start = time.perf_counter()
        done = 0
        while done < ticks and roll.tick():
            done += 1
        elapsed = time.perf_counter() - start
        return elapsed, max(done, 1), roll.verdict
    finally:
        kernels.frame_eval, kernels.advance = orig


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ticks", type=int, default=2000, help="ticks per run")
    args = parser.parse_args()

    if _fast is None:
        print("compiled kernel not built; only timing the pure-Python kernel")

    for name in ("scenario_a", "scenario_c"):
        scenario = resolve_scenario(name)
        n = len(scenario.pursuers)
        print(f"\n{name} ({n} pursuers, mode {scenario.mode}, {args.ticks} ticks)")
        t_ref, done_ref, _ = time_backend(_ref, scenario, args.ticks)
        print(f"  python   : {1e6 * t_ref / done_ref:8.2f} us/tick  ({t_ref:.3f} s)")
        if _fast is not None:
            t_fast, done_fast, _ = time_backend(_fast, scenario, args.ticks)
            print(f"  compiled : {1e6 * t_fast / done_fast:8.2f} us/tick  ({t_fast:.3f} s)")
            print(f"  speedup  : {t_ref / done_ref / (t_fast / done_fast):8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
