import numpy as np
import pytest

from narrowpass import (Arm, PlannerParams, Tree, check_motion, distance, extract_path,
                        goal_satisfied, mab_rrt_plan, rrt_plan, steer)
from narrowpass.rng import RngStream
from narrowpass.scenes import generate_tunnel_scene, open_scene

from conftest import make_box_scene


class TestTreeNearest:
    def test_singleton(self):
        tree = Tree(np.zeros(2))
        assert tree.nearest(np.array([5.0, 5.0])) == 0

    def test_two_nodes(self):
        tree = Tree(np.zeros(2))
        tree.add(np.array([10.0, 0.0]), 0, "uniform")
        assert tree.nearest(np.array([6.0, 0.0])) == 1

    def test_matches_linear_scan_oracle(self):
        rng = RngStream(1)
        tree = Tree(rng.gen.uniform(-10, 10, 2))
        for _ in range(999):
            tree.add(rng.gen.uniform(-10, 10, 2), 0, "uniform")
        pts = tree.points.copy()
        for _ in range(1000):
            q = rng.gen.uniform(-10, 10, 2)
            dists = [float(np.linalg.norm(p - q)) for p in pts]
            expected = min(range(len(dists)), key=lambda i: (dists[i], i))
            assert tree.nearest(q) == expected


class TestSteer:
    def test_within_step_returns_target(self):
        assert np.allclose(steer(np.zeros(2), np.array([3.0, 4.0]), 10.0), [3.0, 4.0])

    def test_truncates_to_eta(self):
        assert np.allclose(steer(np.zeros(2), np.array([3.0, 4.0]), 2.5), [1.5, 2.0])

    def test_identity(self):
        q = np.array([1.0, 1.0])
        assert np.allclose(steer(q, q, 1.0), q)


class TestExtractPath:
    def test_linear_chain(self):
        tree = Tree(np.zeros(2))
        a = tree.add(np.array([1.0, 0.0]), 0, "uniform")
        b = tree.add(np.array([2.0, 0.0]), a, "uniform")
        path = extract_path(tree, b)
        assert np.allclose(path, [[0, 0], [1, 0], [2, 0]])

    def test_root_only(self):
        tree = Tree(np.zeros(2))
        assert len(extract_path(tree, 0)) == 1

    def test_structural_parent_links(self):
        rng = RngStream(2)
        tree = Tree(np.zeros(2))
        for i in range(99):
            parent = int(rng.gen.integers(0, tree.size))
            tree.add(rng.gen.uniform(-5, 5, 2), parent, "uniform")
        leaf = tree.size - 1
        path = extract_path(tree, leaf)
        assert np.allclose(path[0], tree.node(0))
        idx = leaf
        chain = [idx]
        while tree.parents[idx] != idx:
            idx = tree.parents[idx]
            chain.append(idx)
        assert len(path) == len(chain)


def assert_solved_path_valid(scene, result):
    assert result.solved
    path = result.path
    assert np.allclose(path[0], scene.start)
    assert goal_satisfied(scene, path[-1])
    for a, b in zip(path[:-1], path[1:]):
        assert check_motion(scene, a, b)


class TestRrtPlan:
    def test_open_scene_solved(self, open2d):
        result = rrt_plan(open2d, "uniform", PlannerParams(timeout=5.0), RngStream(1))
        assert_solved_path_valid(open2d, result)

    def test_sealed_start_times_out(self):
        scene = make_box_scene(
            [((-5, -5), (5, -1)), ((-5, 1), (5, 5)), ((-5, -1), (-1, 1)), ((1, -1), (5, 1))],
            start=(0, 0))
        result = rrt_plan(scene, "uniform", PlannerParams(timeout=0.3), RngStream(2))
        assert result.outcome in ("timeout", "exhausted")

    @pytest.mark.parametrize("sampler", ["gaussian", "bridge", "obstacle"])
    def test_biased_samplers_solve_open_scene(self, open2d, sampler):
        result = rrt_plan(open2d, sampler, PlannerParams(timeout=5.0), RngStream(3))
        assert_solved_path_valid(open2d, result)

    def test_wide_tunnel_uniform_succeeds_sometimes(self):
        scene = generate_tunnel_scene(15.0)
        solved = sum(
            rrt_plan(scene, "uniform", PlannerParams(timeout=10.0), RngStream(100 + s)).solved
            for s in range(5))
        assert solved > 0

    def test_unknown_sampler_rejected(self, open2d):
        with pytest.raises(ValueError):
            rrt_plan(open2d, "magic", PlannerParams(), RngStream(0))


class TestMabRrtPlan:
    def test_tunnel_solved_with_valid_path(self, tunnel5):
        result = mab_rrt_plan(tunnel5, PlannerParams(timeout=10.0), RngStream(1))
        assert_solved_path_valid(tunnel5, result)
        assert result.r_star is not None

    def test_escape_goal_solved_in_burn_in(self):
        # Open scene with an escape threshold below the max search radius:
        # the burn-in tree already contains escaping nodes.
        from narrowpass import Bounds, GoalSpec, Scene
        scene = Scene(name="esc", bounds=Bounds([-40.0, -40.0], [40.0, 40.0]),
                      start=np.zeros(2), goal=GoalSpec("escape", threshold=20.0))
        result = mab_rrt_plan(scene, PlannerParams(timeout=5.0), RngStream(2))
        assert result.solved
        assert result.iterations <= 50

    def test_tree_edges_all_valid(self, tunnel5):
        result = mab_rrt_plan(tunnel5, PlannerParams(timeout=10.0), RngStream(3))
        tree = result.tree
        for i in range(1, tree.size):
            assert check_motion(tunnel5, tree.node(tree.parents[i]), tree.node(i))

    def test_determinism(self, tunnel5):
        a = mab_rrt_plan(tunnel5, PlannerParams(timeout=10.0), RngStream(4), record_trace=True)
        b = mab_rrt_plan(tunnel5, PlannerParams(timeout=10.0), RngStream(4), record_trace=True)
        assert a.outcome == b.outcome
        assert a.iterations == b.iterations
        assert np.array_equal(a.tree.points, b.tree.points)
        assert [(r.arm, r.valid, r.reward) for r in a.trace] == \
               [(r.arm, r.valid, r.reward) for r in b.trace]

    def test_r_star_non_decreasing(self, tunnel5):
        result = mab_rrt_plan(tunnel5, PlannerParams(timeout=10.0), RngStream(5), record_trace=True)
        r = [row.r_star for row in result.trace]
        assert all(a <= b for a, b in zip(r[:-1], r[1:]))

    def test_uniform_only_reduces_to_rrt(self, open2d):
        params = PlannerParams(timeout=5.0, arms=(Arm.UNIFORM,))
        result = mab_rrt_plan(open2d, params, RngStream(6))
        assert result.solved
        assert result.arm_pulls.get(Arm.PC_POSITIVE, 0) == 0
        assert result.arm_pulls.get(Arm.PC_NEGATIVE, 0) == 0

    def test_degenerate_scale_search_falls_back_to_uniform(self):
        # Pocket smaller than the radius clamp: burn-in finds nothing valid,
        # the cylinder arms are disabled, and a diagnostic is recorded.
        w = 5e-7
        scene = make_box_scene(
            [((-10, -10), (10, -w)), ((-10, w), (10, 10)),
             ((-10, -w), (-w, w)), ((w, -w), (10, w))],
            start=(0, 0))
        result = mab_rrt_plan(scene, PlannerParams(timeout=0.3), RngStream(7))
        assert not result.solved
        assert any("cylinder arms disabled" in d for d in result.diagnostics)
        assert result.arm_pulls.get(Arm.PC_POSITIVE, 0) == 0

    def test_directional_rewards_in_corridor(self, tunnel5):
        # Escape runs along +x: the positive cylinder arm must out-earn the
        # negative one by solve time.
        result = mab_rrt_plan(tunnel5, PlannerParams(timeout=10.0), RngStream(8))
        assert result.solved
        assert result.arm_rewards[Arm.PC_POSITIVE] > result.arm_rewards[Arm.PC_NEGATIVE]
