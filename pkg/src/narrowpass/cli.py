"""Command-line interface.

Subcommands:
  plan         run one planner on one scene
  bench        run a multi-seed campaign from a config file
  scale-trace  dump the grow-shrink radius search history as CSV
  plot         render success-rate-over-time curves from a results CSV

Exit codes: 0 success, 1 usage error, 2 scene error, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys

from .bench import (BenchConfig, PLANNER_NAMES, emit_success_curve, read_records_csv,
                    run_benchmark, run_planner, write_trace)
from .cspace import SceneError
from .planner import PlannerParams
from .rng import RngStream
from .scale_search import ScaleParams, find_entropy_scale
from .scenes import resolve_scene_spec
from .svg import render_tree_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SCENE = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="narrowpass", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="run one planner on one scene")
    p_plan.add_argument("--scene", required=True, help="scene file or builtin spec (e.g. tunnel:gap=5)")
    p_plan.add_argument("--planner", required=True, choices=PLANNER_NAMES)
    p_plan.add_argument("--seed", type=int, default=0)
    p_plan.add_argument("--timeout", type=float, default=10.0)
    p_plan.add_argument("--trace", help="write per-run trace JSON here")
    p_plan.add_argument("--svg", help="render the tree to this SVG file (2-D scenes)")

    p_bench = sub.add_parser("bench", help="run a benchmark campaign")
    p_bench.add_argument("--config", required=True, help="benchmark config JSON")
    p_bench.add_argument("--runs", type=int)
    p_bench.add_argument("--timeout", type=float)
    p_bench.add_argument("--out", help="output directory")
    p_bench.add_argument("--jobs", type=int)

    p_scale = sub.add_parser("scale-trace", help="dump the radius search history as CSV")
    p_scale.add_argument("--scene", required=True)
    p_scale.add_argument("--seed", type=int, default=0)
    p_scale.add_argument("--out", required=True)

    p_plot = sub.add_parser("plot", help="plot success curves from a results CSV")
    p_plot.add_argument("--in", dest="input", required=True)
    p_plot.add_argument("--out", required=True)
    return parser


def _cmd_plan(args) -> int:
    scene = resolve_scene_spec(args.scene)
    params = PlannerParams(timeout=args.timeout)
    result = run_planner(scene, args.planner, params, RngStream(args.seed),
                         record_trace=bool(args.trace or args.svg))
    print(f"scene={scene.name} planner={args.planner} seed={args.seed} "
          f"outcome={result.outcome} iterations={result.iterations} "
          f"wall_time_s={result.wall_time:.3f} tree_size={result.tree_size}"
          + (f" path_length={result.path_length:.3f}" if result.solved else ""))
    if args.trace:
        write_trace(result, args.trace)
    if args.svg:
        from .bench import trace_document
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_tree_svg(scene, trace_document(result)))
    return EXIT_OK


def _cmd_bench(args) -> int:
    config = BenchConfig.from_file(args.config, runs=args.runs, timeout=args.timeout,
                                   out_dir=args.out, jobs=args.jobs)
    records = run_benchmark(config, progress=lambda r: print(
        f"{r.scene} {r.planner} seed={r.seed} {r.outcome} {r.wall_time_s:.2f}s", flush=True))
    solved = sum(r.outcome == "solved" for r in records)
    print(f"done: {solved}/{len(records)} solved; results in {config.out_dir}/results.csv")
    return EXIT_OK


def _cmd_scale_trace(args) -> int:
    scene = resolve_scene_spec(args.scene)
    result = find_entropy_scale(scene, scene.start, ScaleParams(), RngStream(args.seed))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(result.history_csv())
    print(f"r_star={result.r_star!r} converged={result.converged} steps={len(result.history)}")
    return EXIT_OK


def _cmd_plot(args) -> int:
    records = read_records_csv(args.input)
    if not records:
        print("error: no records in input CSV", file=sys.stderr)
        return EXIT_USAGE
    emit_success_curve(records, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "scale-trace":
            return _cmd_scale_trace(args)
        return _cmd_plot(args)
    except (SceneError, FileNotFoundError) as exc:
        print(f"scene error: {exc}", file=sys.stderr)
        return EXIT_SCENE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # unexpected
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
