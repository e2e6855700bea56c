"""Sliding-window UCB arm selection and the distance-based reward rule."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field

DISTANCE_EPSILON = 1e-6


class Arm(enum.IntEnum):
    """Sampler arms in fixed tie-break order."""
    UNIFORM = 0
    PC_POSITIVE = 1
    PC_NEGATIVE = 2


@dataclass
class BanditState:
    """Bounded FIFO of recent (arm, reward) pulls plus lifetime totals."""

    window_size: int = 256
    beta: float = math.sqrt(2.0)
    c_uniform: float = 1e8
    c_scale: float = 5.0
    window: deque = field(default=None)  # type: ignore[assignment]
    cumulative: dict = field(default_factory=lambda: {arm: 0.0 for arm in Arm})
    pulls: dict = field(default_factory=lambda: {arm: 0 for arm in Arm})

    def __post_init__(self):
        if self.window is None:
            self.window = deque(maxlen=self.window_size)

    def update(self, arm: Arm, reward: float) -> "BanditState":
        if reward < 0:
            raise ValueError("rewards must be non-negative")
        self.window.append((arm, reward))
        self.cumulative[arm] += reward
        self.pulls[arm] += 1
        return self

    def ucb_scores(self, arms: tuple[Arm, ...] = tuple(Arm)) -> dict[Arm, float]:
        counts = {arm: 0 for arm in arms}
        sums = {arm: 0.0 for arm in arms}
        for arm, reward in self.window:
            if arm in counts:
                counts[arm] += 1
                sums[arm] += reward
        total = sum(counts.values())
        scores = {}
        for arm in arms:
            n = counts[arm]
            mean = sums[arm] / n if n else 0.0
            scores[arm] = mean + self.beta * math.sqrt(math.log(total + 1) / (n + 1))
        return scores


def select_arm(state: BanditState, arms: tuple[Arm, ...] = tuple(Arm)) -> Arm:
    """Argmax of in-window mean reward plus the UCB exploration bonus; ties go
    to the first arm in enum order."""
    scores = state.ucb_scores(arms)
    best = arms[0]
    for arm in arms[1:]:
        if scores[arm] > scores[best]:
            best = arm
    return best


def compute_reward(arm: Arm, valid: bool, dist_from_start: float,
                   c_uniform: float = 1e8, c_scale: float = 5.0) -> float:
    """Invalid pulls earn nothing; uniform pulls earn distance scaled down by
    c_uniform, cylinder pulls earn c_scale over distance."""
    if dist_from_start < 0:
        raise ValueError("distance must be non-negative")
    if not valid:
        return 0.0
    if arm is Arm.UNIFORM:
        return dist_from_start / c_uniform
    return c_scale / max(dist_from_start, DISTANCE_EPSILON)
