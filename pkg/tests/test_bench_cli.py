import json
import subprocess
import sys

import pytest

from narrowpass.bench import (BenchConfig, BenchRecord, PLANNER_NAMES, emit_success_curve,
                              read_records_csv, run_benchmark, success_curves,
                              trace_document, write_records_csv, write_trace)
from narrowpass.planner import PlannerParams, mab_rrt_plan
from narrowpass.rng import RngStream
from narrowpass.scenes import open_scene, resolve_scene_spec
from narrowpass.svg import render_tree_svg


def make_records():
    recs = []
    for seed, (outcome, t) in enumerate([("solved", 0.5), ("solved", 1.5),
                                         ("timeout", 10.0), ("solved", 3.25)]):
        recs.append(BenchRecord(scene="s", planner="p", seed=seed, outcome=outcome,
                                wall_time_s=t, iterations=seed * 100 + 7,
                                path_length=12.3456789 if outcome == "solved" else None,
                                tree_size=seed + 2, r_star=None if seed % 2 else 3.14159))
    return recs


class TestRecordsCsv:
    def test_round_trip(self, tmp_path):
        recs = make_records()
        path = str(tmp_path / "r.csv")
        write_records_csv(recs, path)
        back = read_records_csv(path)
        assert len(back) == len(recs)
        for a, b in zip(recs, back):
            assert (a.scene, a.planner, a.seed, a.outcome) == (b.scene, b.planner, b.seed, b.outcome)
            assert abs(a.wall_time_s - b.wall_time_s) < 1e-6
            assert a.iterations == b.iterations
            assert a.tree_size == b.tree_size
            for fa, fb in ((a.path_length, b.path_length), (a.r_star, b.r_star)):
                if fa is None:
                    assert fb is None
                else:
                    assert abs(fa - fb) < 1e-9


class TestSuccessCurves:
    def test_plateau_fraction(self):
        curves = success_curves(make_records(), timeout=10.0)
        pts = curves[("s", "p")]
        # 3 of 4 runs solved: curve steps to 3/4 and no further.
        assert pts[-1][1] == pytest.approx(0.75)
        assert [p[1] for p in pts] == pytest.approx([0.25, 0.5, 0.75])

    def test_monotone_in_time_and_fraction(self):
        pts = success_curves(make_records(), timeout=10.0)[("s", "p")]
        assert all(a[0] <= b[0] and a[1] < b[1] for a, b in zip(pts[:-1], pts[1:]))

    def test_emit_writes_svg_and_csv(self, tmp_path):
        svg = tmp_path / "curve.svg"
        emit_success_curve(make_records(), str(svg))
        text = svg.read_text()
        assert text.startswith("<svg") and "polyline" in text
        assert (tmp_path / "curve.csv").read_text().startswith("scene,planner,time,success_rate")

    def test_emit_empty_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            emit_success_curve([], str(tmp_path / "x.svg"))


class TestRunBenchmark:
    def test_record_cardinality_and_sorting(self, tmp_path):
        config = BenchConfig(scenes=("open",), planners=("mab-rrt", "rrt-uniform"),
                             runs=3, timeout=5.0, base_seed=10, out_dir=str(tmp_path / "out"))
        records = run_benchmark(config)
        assert len(records) == 1 * 2 * 3
        assert [r.sort_key for r in records] == sorted(r.sort_key for r in records)
        assert all(r.outcome == "solved" for r in records)
        on_disk = read_records_csv(str(tmp_path / "out" / "results.csv"))
        assert [r.sort_key for r in on_disk] == [r.sort_key for r in records]

    def test_bad_scene_aborts_before_running(self, tmp_path):
        config = BenchConfig(scenes=("tunnel:gap=-1",), runs=1,
                             out_dir=str(tmp_path / "out"))
        with pytest.raises(Exception):
            run_benchmark(config)

    def test_unknown_planner_rejected(self):
        with pytest.raises(ValueError):
            BenchConfig(scenes=("open",), planners=("rrt-quantum",))


class TestTraceDocument:
    def test_byte_identical_for_same_seed(self, tmp_path):
        scene = resolve_scene_spec("tunnel:gap=10")
        paths = []
        for name in ("a.json", "b.json"):
            result = mab_rrt_plan(scene, PlannerParams(timeout=10.0), RngStream(7),
                                  record_trace=True)
            p = tmp_path / name
            write_trace(result, str(p))
            paths.append(p)
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_document_fields(self):
        scene = open_scene()
        result = mab_rrt_plan(scene, PlannerParams(timeout=5.0), RngStream(3),
                              record_trace=True)
        doc = trace_document(result)
        assert doc["outcome"] == "solved"
        assert len(doc["nodes"]) == doc["tree_size"] == len(doc["parents"]) == len(doc["tags"])
        assert doc["parents"][0] == 0
        assert set(doc["tags"]) <= {"burnin", "uniform", "pc-positive", "pc-negative", "root"}
        assert doc["scale_history"]


class TestTreeSvg:
    def test_structure(self):
        scene = resolve_scene_spec("tunnel:gap=10")
        result = mab_rrt_plan(scene, PlannerParams(timeout=10.0), RngStream(5),
                              record_trace=True)
        svg = render_tree_svg(scene, trace_document(result))
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
        assert "circle" in svg  # r* marker and goal region
        assert "rect" in svg    # obstacles

    def test_scene_only(self):
        svg = render_tree_svg(open_scene(), None)
        assert "<svg" in svg

    def test_non_2d_rejected(self):
        import numpy as np
        from narrowpass import Bounds, GoalSpec, Scene
        scene = Scene(name="3d", bounds=Bounds([-1.0] * 3, [1.0] * 3),
                      start=np.zeros(3), goal=GoalSpec("escape", threshold=10.0))
        with pytest.raises(ValueError):
            render_tree_svg(scene, None)


CLI = [sys.executable, "-m", "narrowpass"]


def run_cli(*args):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


class TestCli:
    def test_plan_smoke(self, tmp_path):
        trace = tmp_path / "t.json"
        svg = tmp_path / "t.svg"
        proc = run_cli("plan", "--scene", "tunnel:gap=10", "--planner", "mab-rrt",
                       "--seed", "1", "--trace", str(trace), "--svg", str(svg))
        assert proc.returncode == 0, proc.stderr
        assert "outcome=solved" in proc.stdout
        assert json.loads(trace.read_text())["outcome"] == "solved"
        assert svg.read_text().startswith("<svg")

    def test_plan_trace_determinism(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            p = tmp_path / name
            proc = run_cli("plan", "--scene", "tunnel:gap=10", "--planner", "mab-rrt",
                           "--seed", "42", "--trace", str(p))
            assert proc.returncode == 0, proc.stderr
            outs.append(p.read_bytes())
        assert outs[0] == outs[1]

    def test_usage_error_exit_1(self):
        assert run_cli("plan", "--scene", "open").returncode == 1       # missing --planner
        assert run_cli("plan", "--scene", "open", "--planner", "nope").returncode == 1
        assert run_cli().returncode == 1

    def test_scene_error_exit_2(self, tmp_path):
        proc = run_cli("plan", "--scene", "/no/such/scene.json",
                       "--planner", "rrt-uniform")
        assert proc.returncode == 2
        bad = tmp_path / "bad.json"
        bad.write_text('{"bounds": "nope"}')
        assert run_cli("plan", "--scene", str(bad), "--planner", "rrt-uniform").returncode == 2

    def test_scale_trace(self, tmp_path):
        out = tmp_path / "scale.csv"
        proc = run_cli("scale-trace", "--scene", "tunnel:gap=5", "--seed", "0",
                       "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "step,radius,alpha"
        assert len(lines) > 1

    def test_bench_and_plot(self, tmp_path):
        config = tmp_path / "bench.json"
        config.write_text(json.dumps({
            "scenes": ["open"], "planners": ["mab-rrt"], "runs": 2,
            "timeout": 5.0, "seed": 1, "out": str(tmp_path / "res")}))
        proc = run_cli("bench", "--config", str(config))
        assert proc.returncode == 0, proc.stderr
        csv_path = tmp_path / "res" / "results.csv"
        assert len(read_records_csv(str(csv_path))) == 2
        plot = tmp_path / "curves.svg"
        proc = run_cli("plot", "--in", str(csv_path), "--out", str(plot))
        assert proc.returncode == 0, proc.stderr
        assert plot.read_text().startswith("<svg")
