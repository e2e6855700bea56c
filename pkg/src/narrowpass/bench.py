"""Benchmark harness: seeded campaigns across planners, CSV records, plots."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bandit import Arm
from .cspace import Scene
from .planner import PlannerParams, PlannerResult, mab_rrt_plan, rrt_plan
from .rng import RngStream
from .scenes import resolve_scene_spec
from .svg import render_success_curves

PLANNER_NAMES = ("mab-rrt", "rrt-uniform", "rrt-gaussian", "rrt-bridge", "rrt-obstacle")

RESULTS_HEADER = ["scene", "planner", "seed", "outcome", "wall_time_s",
                  "iterations", "path_length", "tree_size", "r_star"]


@dataclass(frozen=True)
class BenchConfig:
    scenes: tuple[str, ...]               # file paths or builtin specs
    planners: tuple[str, ...] = ("mab-rrt", "rrt-uniform")
    runs: int = 20
    timeout: float = 10.0
    base_seed: int = 1000
    out_dir: str = "results"
    jobs: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        for p in self.planners:
            if p not in PLANNER_NAMES:
                raise ValueError(f"unknown planner {p!r}")

    @staticmethod
    def from_file(path: str, **overrides) -> "BenchConfig":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        kwargs = dict(
            scenes=tuple(doc["scenes"]),
            planners=tuple(doc.get("planners", ("mab-rrt", "rrt-uniform"))),
            runs=doc.get("runs", 20),
            timeout=doc.get("timeout", 10.0),
            base_seed=doc.get("seed", 1000),
            out_dir=doc.get("out", "results"),
            jobs=doc.get("jobs", 1),
        )
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return BenchConfig(**kwargs)


@dataclass
class BenchRecord:
    scene: str
    planner: str
    seed: int
    outcome: str
    wall_time_s: float
    iterations: int
    path_length: float | None
    tree_size: int
    r_star: float | None

    def row(self) -> list[str]:
        return [
            self.scene, self.planner, str(self.seed), self.outcome,
            f"{self.wall_time_s:.6f}", str(self.iterations),
            "" if self.path_length is None else repr(self.path_length),
            str(self.tree_size),
            "" if self.r_star is None else repr(self.r_star),
        ]

    @staticmethod
    def from_row(row: dict) -> "BenchRecord":
        return BenchRecord(
            scene=row["scene"], planner=row["planner"], seed=int(row["seed"]),
            outcome=row["outcome"], wall_time_s=float(row["wall_time_s"]),
            iterations=int(row["iterations"]),
            path_length=float(row["path_length"]) if row["path_length"] else None,
            tree_size=int(row["tree_size"]),
            r_star=float(row["r_star"]) if row["r_star"] else None,
        )

    @property
    def sort_key(self):
        return (self.scene, self.planner, self.seed)


def run_planner(scene: Scene, planner: str, params: PlannerParams, rng: RngStream,
                record_trace: bool = False) -> PlannerResult:
    if planner == "mab-rrt":
        return mab_rrt_plan(scene, params, rng, record_trace=record_trace)
    return rrt_plan(scene, planner.removeprefix("rrt-"), params, rng, record_trace=record_trace)


def _run_one(scene_spec: str, planner: str, seed: int, timeout: float) -> BenchRecord:
    try:
        scene = resolve_scene_spec(scene_spec)
    except Exception:
        return BenchRecord(scene=scene_spec, planner=planner, seed=seed, outcome="error",
                           wall_time_s=0.0, iterations=0, path_length=None, tree_size=0, r_star=None)
    try:
        params = PlannerParams(timeout=timeout)
        result = run_planner(scene, planner, params, RngStream(seed))
        return BenchRecord(
            scene=scene.name, planner=planner, seed=seed, outcome=result.outcome,
            wall_time_s=result.wall_time, iterations=result.iterations,
            path_length=result.path_length, tree_size=result.tree_size,
            r_star=result.r_star,
        )
    except Exception:  # individual run failures become error records
        return BenchRecord(scene=scene.name, planner=planner, seed=seed, outcome="error",
                           wall_time_s=0.0, iterations=0, path_length=None, tree_size=0, r_star=None)


def run_benchmark(config: BenchConfig, progress=None) -> list[BenchRecord]:
    """One seeded run per (scene, planner, run index); records are written
    incrementally to results.csv in the output directory and returned sorted."""
    # Resolve all scenes up front so a bad spec aborts before any run.
    for spec in config.scenes:
        resolve_scene_spec(spec)
    os.makedirs(config.out_dir, exist_ok=True)
    csv_path = os.path.join(config.out_dir, "results.csv")
    tasks = [
        (spec, planner, config.base_seed + i, config.timeout)
        for spec in config.scenes
        for planner in config.planners
        for i in range(config.runs)
    ]
    records: list[BenchRecord] = []
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                for rec in pool.map(_run_one, *zip(*tasks)):
                    records.append(rec)
                    writer.writerow(rec.row())
                    fh.flush()
                    if progress:
                        progress(rec)
        else:
            for task in tasks:
                rec = _run_one(*task)
                records.append(rec)
                writer.writerow(rec.row())
                fh.flush()
                if progress:
                    progress(rec)
    records.sort(key=lambda r: r.sort_key)
    write_records_csv(records, csv_path)
    return records


def write_records_csv(records: list[BenchRecord], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        for rec in records:
            writer.writerow(rec.row())


def read_records_csv(path: str) -> list[BenchRecord]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        return [BenchRecord.from_row(row) for row in csv.DictReader(fh)]


def records_csv_text(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(RESULTS_HEADER)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def success_curves(records: list[BenchRecord], timeout: float) -> dict[tuple[str, str], list[tuple[float, float]]]:
    """Per (scene, planner): step points (time, cumulative solve fraction)."""
    groups: dict[tuple[str, str], list[BenchRecord]] = {}
    for rec in records:
        groups.setdefault((rec.scene, rec.planner), []).append(rec)
    curves = {}
    for key, recs in groups.items():
        times = sorted(r.wall_time_s for r in recs if r.outcome == "solved")
        total = len(recs)
        curves[key] = [(t, (i + 1) / total) for i, t in enumerate(times)]
    return curves


def emit_success_curve(records: list[BenchRecord], out_svg: str, out_csv: str | None = None,
                       timeout: float | None = None) -> None:
    if not records:
        raise ValueError("no records to plot")
    if timeout is None:
        timeout = max(max(r.wall_time_s for r in records), 1e-3)
    curves = success_curves(records, timeout)
    with open(out_svg, "w", encoding="utf-8") as fh:
        fh.write(render_success_curves(curves, timeout))
    if out_csv is None:
        out_csv = os.path.splitext(out_svg)[0] + ".csv"
    with open(out_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scene", "planner", "time", "success_rate"])
        for (scene, planner), pts in sorted(curves.items()):
            for t, frac in pts:
                writer.writerow([scene, planner, f"{t:.6f}", f"{frac:.6f}"])


def trace_document(result: PlannerResult) -> dict:
    """Deterministic per-run trace: iteration rows plus the tree dump.

    Wall-clock time is deliberately excluded so identical seeded runs produce
    byte-identical trace files.
    """
    doc: dict = {
        "outcome": result.outcome,
        "iterations": result.iterations,
        "tree_size": result.tree_size,
        "r_star": result.r_star,
        "arm_pulls": {TAGS[a]: n for a, n in result.arm_pulls.items()} if result.arm_pulls else {},
        "arm_rewards": {TAGS[a]: r for a, r in result.arm_rewards.items()} if result.arm_rewards else {},
    }
    if result.tree is not None:
        doc["nodes"] = [list(map(float, p)) for p in result.tree.points]
        doc["parents"] = list(result.tree.parents)
        doc["tags"] = list(result.tree.tags)
        doc["birth_iters"] = list(result.tree.birth_iters)
    if result.path is not None:
        doc["path"] = [list(map(float, p)) for p in result.path]
    if result.trace is not None:
        doc["rows"] = [
            [row.iteration, row.arm, int(row.valid), row.reward, row.r_star, row.tree_size, *row.ucb_scores]
            for row in result.trace
        ]
    if result.scale_result is not None:
        doc["scale_history"] = [[r, a] for r, a in result.scale_result.history]
        doc["scale_converged"] = result.scale_result.converged
    return doc


TAGS = {Arm.UNIFORM: "uniform", Arm.PC_POSITIVE: "pc-positive", Arm.PC_NEGATIVE: "pc-negative"}


def write_trace(result: PlannerResult, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(trace_document(result), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
