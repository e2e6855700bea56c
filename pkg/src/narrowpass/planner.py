"""RRT core and the scale-invariant bandit planner.

The bandit planner first runs the grow-shrink scale search from the start,
seeds its tree with the accumulated valid samples, estimates the principal
escape direction, and then loops: pick an arm (uniform or a signed cylinder
along the escape axis), extend the tree one RRT step, and feed the outcome
back into the bandit. The cylinder's axial interval ratchets outward as
valid cylinder samples are drawn at larger heights.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bandit import Arm, BanditState, compute_reward, select_arm
from .cspace import Config, Scene, check_motion, distance, goal_satisfied, is_state_valid
from .pca import CylinderSpec, DegenerateAxisError, PrincipalAxis, principal_axis, recalibrate_axis, sample_cylinder_with_height
from .rng import RngStream
from .samplers import baseline_stddev, sample_bridge, sample_gaussian_obstacle, sample_near_obstacle, sample_uniform
from .scale_search import ScaleParams, ScaleSearchResult, find_entropy_scale

# Default steer step as a fraction of the bounds diagonal.
DEFAULT_ETA_FRACTION = 0.025

BASELINE_SAMPLERS = ("uniform", "gaussian", "bridge", "obstacle")

# Edge provenance tags as written to traces and SVGs.
TAG_BURNIN = "burnin"
TAG_FOR_ARM = {Arm.UNIFORM: "uniform", Arm.PC_POSITIVE: "pc-positive", Arm.PC_NEGATIVE: "pc-negative"}


class Tree:
    """Planning tree over configurations with parent links.

    Nearest-neighbor queries run as a vectorized scan over a growable array;
    tie-breaking is by lowest node index.
    """

    def __init__(self, root: Config):
        root = np.asarray(root, dtype=float)
        self._dim = root.shape[0]
        self._cap = 64
        self._pts = np.empty((self._cap, self._dim))
        self._pts[0] = root
        self.size = 1
        self.parents = [0]
        self.tags = [TAG_BURNIN]
        self.birth_iters = [-1]

    @property
    def points(self) -> np.ndarray:
        return self._pts[: self.size]

    def node(self, i: int) -> Config:
        return self._pts[i].copy()

    def add(self, q: Config, parent: int, tag: str, birth_iter: int = -1) -> int:
        if self.size == self._cap:
            self._cap *= 2
            grown = np.empty((self._cap, self._dim))
            grown[: self.size] = self._pts[: self.size]
            self._pts = grown
        self._pts[self.size] = q
        self.parents.append(parent)
        self.tags.append(tag)
        self.birth_iters.append(birth_iter)
        self.size += 1
        return self.size - 1

    def nearest(self, q: Config) -> int:
        diff = self._pts[: self.size] - q
        d2 = np.einsum("ij,ij->i", diff, diff)
        return int(np.argmin(d2))


def steer(from_q: Config, to_q: Config, eta: float) -> Config:
    if eta <= 0:
        raise ValueError("eta must be positive")
    from_q = np.asarray(from_q, dtype=float)
    to_q = np.asarray(to_q, dtype=float)
    d = float(np.linalg.norm(to_q - from_q))
    if d <= eta:
        return to_q.copy()
    return from_q + (eta / d) * (to_q - from_q)


def extract_path(tree: Tree, leaf: int) -> list[Config]:
    path = []
    i = leaf
    while True:
        path.append(tree.node(i))
        if tree.parents[i] == i:
            break
        i = tree.parents[i]
    path.reverse()
    return path


@dataclass(frozen=True)
class PlannerParams:
    eta: float | None = None              # steer step; None -> 2.5% of bounds diagonal
    timeout: float = 10.0                 # wall-clock seconds
    max_iterations: int = 1_000_000
    delta: float = 1.0                    # cylinder axial extension factor
    kappa: float = 0.25                   # cylinder radius as a fraction of the entropy radius
    scale: ScaleParams = field(default_factory=ScaleParams)
    window_size: int = 256
    beta: float = math.sqrt(2.0)
    c_uniform: float = 1e8
    c_scale: float = 5.0
    arms: tuple[Arm, ...] = tuple(Arm)    # restrict to (Arm.UNIFORM,) to disable cylinder arms

    def __post_init__(self):
        if self.eta is not None and self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if not self.arms or self.arms[0] is not Arm.UNIFORM:
            raise ValueError("arms must include UNIFORM first")

    def effective_eta(self, scene: Scene) -> float:
        return self.eta if self.eta is not None else DEFAULT_ETA_FRACTION * scene.bounds.diagonal


@dataclass
class TraceRow:
    iteration: int
    arm: str
    valid: bool
    reward: float
    r_star: float
    tree_size: int
    ucb_scores: tuple[float, float, float]


@dataclass
class PlannerResult:
    outcome: str                      # "solved" | "timeout" | "exhausted"
    path: list[Config] | None
    iterations: int
    wall_time: float
    tree_size: int
    r_star: float | None
    arm_pulls: dict
    arm_rewards: dict
    tree: Tree | None = None
    trace: list[TraceRow] | None = None
    scale_result: ScaleSearchResult | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def solved(self) -> bool:
        return self.outcome == "solved"

    @property
    def path_length(self) -> float | None:
        if not self.solved or not self.path:
            return None
        return float(sum(distance(a, b) for a, b in zip(self.path[:-1], self.path[1:])))


def _finish(outcome, path, it, t0, tree, r_star, bandit, trace, scale_result, diagnostics):
    return PlannerResult(
        outcome=outcome, path=path, iterations=it, wall_time=time.perf_counter() - t0,
        tree_size=tree.size, r_star=r_star,
        arm_pulls=dict(bandit.pulls) if bandit else {},
        arm_rewards=dict(bandit.cumulative) if bandit else {},
        tree=tree, trace=trace, scale_result=scale_result, diagnostics=diagnostics,
    )


def rrt_plan(scene: Scene, sampler: str, params: PlannerParams, rng: RngStream,
             record_trace: bool = False) -> PlannerResult:
    """Plain RRT with a fixed sampling strategy; biased samplers that come up
    empty fall back to a uniform draw for that iteration."""
    if sampler not in BASELINE_SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}")
    eta = params.effective_eta(scene)
    stddev = baseline_stddev(scene)
    tree = Tree(scene.start)
    trace: list[TraceRow] | None = [] if record_trace else None
    diagnostics: list[str] = []
    t0 = time.perf_counter()

    if goal_satisfied(scene, scene.start):
        return _finish("solved", [scene.start.copy()], 0, t0, tree, None, None, trace, None, diagnostics)

    for it in range(params.max_iterations):
        if time.perf_counter() - t0 > params.timeout:
            return _finish("timeout", None, it, t0, tree, None, None, trace, None, diagnostics)
        if sampler == "uniform":
            x_sample = sample_uniform(scene.bounds, rng)
        elif sampler == "gaussian":
            x_sample = sample_gaussian_obstacle(scene, stddev, rng)
        elif sampler == "bridge":
            x_sample = sample_bridge(scene, stddev, rng)
        else:
            x_sample = sample_near_obstacle(scene, rng)
        if x_sample is None:
            x_sample = sample_uniform(scene.bounds, rng)

        i_near = tree.nearest(x_sample)
        x_new = steer(tree.node(i_near), x_sample, eta)
        valid = check_motion(scene, tree.node(i_near), x_new)
        if valid:
            leaf = tree.add(x_new, i_near, "uniform", it)
            if record_trace:
                trace.append(TraceRow(it, sampler, True, 0.0, 0.0, tree.size, (0.0, 0.0, 0.0)))
            if goal_satisfied(scene, x_new):
                return _finish("solved", extract_path(tree, leaf), it + 1, t0, tree, None, None, trace, None, diagnostics)
        elif record_trace:
            trace.append(TraceRow(it, sampler, False, 0.0, 0.0, tree.size, (0.0, 0.0, 0.0)))

    return _finish("exhausted", None, params.max_iterations, t0, tree, None, None, trace, None, diagnostics)


def mab_rrt_plan(scene: Scene, params: PlannerParams, rng: RngStream,
                 record_trace: bool = False) -> PlannerResult:
    """Scale-invariant bandit planner.

    Phases: (1) grow-shrink scale search at the start; (2) tree seeded with
    the start plus every burn-in sample as its child; (3) principal escape
    direction from the burn-in set; (4) bandit loop arbitrating between the
    uniform sampler and the two signed cylinder samplers.
    """
    eta = params.effective_eta(scene)
    trace: list[TraceRow] | None = [] if record_trace else None
    diagnostics: list[str] = []
    t0 = time.perf_counter()

    scale_res = find_entropy_scale(scene, scene.start, params.scale, rng.spawn(0))
    r_star = scale_res.r_star

    tree = Tree(scene.start)
    goal_leaf = None
    if goal_satisfied(scene, scene.start):
        goal_leaf = 0
    for v in scale_res.valid_samples:
        leaf = tree.add(v, 0, TAG_BURNIN, -1)
        if goal_leaf is None and goal_satisfied(scene, v):
            goal_leaf = leaf
    if goal_leaf is not None:
        return _finish("solved", extract_path(tree, goal_leaf), 0, t0, tree, r_star, None, trace, scale_res, diagnostics)

    axis: PrincipalAxis | None = None
    arms = params.arms
    if Arm.PC_POSITIVE in arms or Arm.PC_NEGATIVE in arms:
        try:
            axis = principal_axis(scale_res.valid_samples, scene.start)
        except DegenerateAxisError:
            axis = None
        if axis is None:
            arms = (Arm.UNIFORM,)
            diagnostics.append("scale search produced no valid samples; cylinder arms disabled")

    bandit = BanditState(window_size=params.window_size, beta=params.beta,
                         c_uniform=params.c_uniform, c_scale=params.c_scale)
    loop_rng = rng.spawn(1)

    for it in range(params.max_iterations):
        if time.perf_counter() - t0 > params.timeout:
            return _finish("timeout", None, it, t0, tree, r_star, bandit, trace, scale_res, diagnostics)

        h_ext = params.delta * r_star
        arm = select_arm(bandit, arms)
        h_drawn = 0.0
        if arm is Arm.UNIFORM:
            x_sample = sample_uniform(scene.bounds, loop_rng)
        else:
            spec = CylinderSpec(
                axis=axis,
                direction=+1 if arm is Arm.PC_POSITIVE else -1,
                h_min=r_star, h_max=r_star + h_ext,
                radius=params.kappa * r_star,
            )
            x_sample, h_drawn = sample_cylinder_with_height(spec, loop_rng)

        i_near = tree.nearest(x_sample)
        x_near = tree.node(i_near)
        x_new = steer(x_near, x_sample, eta)
        valid = check_motion(scene, x_near, x_new)

        solved_leaf = None
        if valid:
            leaf = tree.add(x_new, i_near, TAG_FOR_ARM[arm], it)
            if arm is not Arm.UNIFORM:
                axis = recalibrate_axis(axis, x_new)
                # Expand reach only when the cylinder sample itself was added
                # to the tree (steer did not truncate): otherwise the drawn
                # height reflects nothing the tree has actually reached and
                # the radius ratchets away from the frontier.
                if np.array_equal(x_new, x_sample):
                    r_star = min(max(r_star, h_drawn), scene.bounds.diagonal)
            if goal_satisfied(scene, x_new):
                solved_leaf = leaf

        reward = compute_reward(arm, valid, distance(x_new, scene.start),
                                params.c_uniform, params.c_scale)
        bandit.update(arm, reward)
        if record_trace:
            full = bandit.ucb_scores(tuple(Arm))
            trace.append(TraceRow(it, TAG_FOR_ARM[arm], valid, reward, r_star, tree.size,
                                  (full[Arm.UNIFORM], full[Arm.PC_POSITIVE], full[Arm.PC_NEGATIVE])))
        if solved_leaf is not None:
            return _finish("solved", extract_path(tree, solved_leaf), it + 1, t0, tree, r_star, bandit, trace, scale_res, diagnostics)

    return _finish("exhausted", None, params.max_iterations, t0, tree, r_star, bandit, trace, scale_res, diagnostics)
