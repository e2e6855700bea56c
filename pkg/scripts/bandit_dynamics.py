#!/usr/bin/env python3
"""Trace the bandit's behavior on one planning run.

Runs MAB-RRT on a scene, then writes the full trace JSON, a tree SVG colored
by arm, and a per-arm cumulative-reward CSV suitable for plotting.
"""

import argparse
import csv
import os

from narrowpass.bench import trace_document, write_trace
from narrowpass.planner import PlannerParams, mab_rrt_plan
from narrowpass.rng import RngStream
from narrowpass.scenes import resolve_scene_spec
from narrowpass.svg import render_tree_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scene", default="tunnel:gap=5")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--timeout", type=float, default=10.0)
    ap.add_argument("--out", default="results/dynamics")
    args = ap.parse_args()

    scene = resolve_scene_spec(args.scene)
    result = mab_rrt_plan(scene, PlannerParams(timeout=args.timeout),
                          RngStream(args.seed), record_trace=True)
    print(f"scene={scene.name} outcome={result.outcome} iterations={result.iterations} "
          f"tree_size={result.tree_size} r_star={result.r_star}")

    os.makedirs(args.out, exist_ok=True)
    write_trace(result, os.path.join(args.out, "trace.json"))
    if scene.dimension == 2:
        with open(os.path.join(args.out, "tree.svg"), "w", encoding="utf-8") as fh:
            fh.write(render_tree_svg(scene, trace_document(result)))

    cum = {"uniform": 0.0, "pc-positive": 0.0, "pc-negative": 0.0}
    with open(os.path.join(args.out, "rewards.csv"), "w", newline="",
              encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iteration", "arm", "valid", "reward", "r_star",
                         "cum_uniform", "cum_pc_positive", "cum_pc_negative"])
        for row in result.trace:
            cum[row.arm] += row.reward
            writer.writerow([row.iteration, row.arm, int(row.valid),
                             f"{row.reward:.6g}", f"{row.r_star:.6g}",
                             f"{cum['uniform']:.6g}", f"{cum['pc-positive']:.6g}",
                             f"{cum['pc-negative']:.6g}"])
    print(f"wrote trace.json, rewards.csv"
          + (", tree.svg" if scene.dimension == 2 else "") + f" to {args.out}")


if __name__ == "__main__":
    main()
