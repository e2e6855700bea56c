#!/usr/bin/env python3
"""Tunnel benchmark campaign: every planner on the 5/10/15-unit-gap tunnels.

Writes results.csv, a success-rate-over-time SVG, and its backing CSV to the
output directory. With default settings this is 300 runs and takes a few
minutes on one core.
"""

import argparse
import statistics
import os

from narrowpass.bench import (BenchConfig, PLANNER_NAMES, emit_success_curve,
                              run_benchmark)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=20, help="seeds per (scene, planner)")
    ap.add_argument("--timeout", type=float, default=10.0)
    ap.add_argument("--seed", type=int, default=1000)
    ap.add_argument("--out", default="results/tunnels")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--planners", nargs="+", default=list(PLANNER_NAMES))
    args = ap.parse_args()

    config = BenchConfig(
        scenes=("tunnel:gap=5", "tunnel:gap=10", "tunnel:gap=15"),
        planners=tuple(args.planners), runs=args.runs, timeout=args.timeout,
        base_seed=args.seed, out_dir=args.out, jobs=args.jobs)
    records = run_benchmark(config, progress=lambda r: print(
        f"{r.scene:14s} {r.planner:14s} seed={r.seed} {r.outcome:9s} {r.wall_time_s:6.2f}s",
        flush=True))

    emit_success_curve(records, os.path.join(args.out, "success_curves.svg"),
                       timeout=args.timeout)

    print()
    print(f"{'scene':14s} {'planner':14s} {'solved':>8s} {'median s':>9s}")
    for scene in sorted({r.scene for r in records}):
        for planner in config.planners:
            group = [r for r in records if r.scene == scene and r.planner == planner]
            solved = [r for r in group if r.outcome == "solved"]
            med = statistics.median(r.wall_time_s for r in solved) if solved else float("nan")
            print(f"{scene:14s} {planner:14s} {len(solved):3d}/{len(group):<4d} {med:9.3f}")


if __name__ == "__main__":
    main()
