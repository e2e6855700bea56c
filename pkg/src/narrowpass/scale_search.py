"""Grow-shrink search for a sampling radius with an informative validity rate.

At a useful scale roughly half the batch of sphere samples admits a valid
straight motion from the start; radii where almost all or almost none do are
uninformative. The search shrinks when too few samples are valid and grows
when too many are, stopping once the measured rate lands in the target
interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cspace import Config, Scene, is_state_valid, motions_valid_fan
from .rng import RngStream
from .samplers import SphereBatchSpec, sample_sphere_batch


@dataclass(frozen=True)
class ScaleParams:
    r0: float = 1.0
    alpha_min: float = 0.1
    alpha_max: float = 0.5
    # Step magnitudes in log space: effective shrink divisor exp(shrink_log),
    # effective grow multiplier exp(grow_log). Both must be positive so that
    # "grow" grows and "shrink" shrinks.
    shrink_log: float = 0.9
    grow_log: float = 0.7
    r_min: float = 1e-6
    r_max: float = 25.0
    batch_size: int = 64
    max_steps: int = 50
    jitter: float = math.pi / 8.0

    def __post_init__(self):
        if not (0.0 < self.alpha_min < self.alpha_max <= 1.0):
            raise ValueError("require 0 < alpha_min < alpha_max <= 1")
        if self.shrink_log <= 0 or self.grow_log <= 0:
            raise ValueError("step magnitudes must be positive")
        if not (0.0 < self.r_min <= self.r_max):
            raise ValueError("require 0 < r_min <= r_max")
        if self.batch_size < 2 or self.max_steps < 1:
            raise ValueError("batch_size >= 2 and max_steps >= 1 required")

    @property
    def shrink_factor(self) -> float:
        return math.exp(self.shrink_log)

    @property
    def grow_factor(self) -> float:
        return math.exp(self.grow_log)


@dataclass
class ScaleSearchResult:
    r_star: float
    valid_samples: np.ndarray  # (k, N), motions from the start all valid
    converged: bool
    history: list[tuple[float, float]] = field(default_factory=list)  # (radius, alpha)

    def history_csv(self) -> str:
        lines = ["step,radius,alpha"]
        for i, (r, a) in enumerate(self.history):
            lines.append(f"{i},{r!r},{a!r}")
        return "\n".join(lines) + "\n"


def find_entropy_scale(scene: Scene, q0: Config, params: ScaleParams, rng: RngStream) -> ScaleSearchResult:
    """Search radii by grow/shrink factors until the batch validity rate falls
    inside [alpha_min, alpha_max]; returns the radius and the valid samples
    accumulated along the way."""
    q0 = np.asarray(q0, dtype=float)
    if not is_state_valid(scene, q0):
        raise ValueError("scale search requires a valid start configuration")

    r = min(max(params.r0, params.r_min), params.r_max)
    collected: list[np.ndarray] = []
    history: list[tuple[float, float]] = []
    converged = False

    for _ in range(params.max_steps):
        spec = SphereBatchSpec(q0, r, params.batch_size, params.jitter)
        batch = sample_sphere_batch(spec, rng)
        valid = motions_valid_fan(scene, q0, batch)
        alpha = float(valid.mean())
        history.append((r, alpha))

        if params.alpha_min <= alpha <= params.alpha_max:
            collected.append(batch[valid])
            converged = True
            break
        if alpha < params.alpha_min:
            collected.append(batch[valid])
            if r <= params.r_min:
                break  # shrinking again is a no-op under the clamp
            r = max(r / params.shrink_factor, params.r_min)
        else:
            r = min(r * params.grow_factor, params.r_max)

    r_star = max(r, params.r_min)
    samples = np.concatenate(collected, axis=0) if collected else np.empty((0, scene.dimension))
    return ScaleSearchResult(r_star=r_star, valid_samples=samples, converged=converged, history=history)
