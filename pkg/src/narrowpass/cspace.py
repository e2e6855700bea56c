"""Configuration space: scenes, primitive obstacles, occupancy grids, validity checks.

A configuration is a plain 1-D float array. Scenes are immutable after
construction and safe to share across concurrent planner runs; all validity
checks are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

Config = np.ndarray

# Motion-check resolution as a fraction of the bounds diagonal.
DEFAULT_RESOLUTION_FRACTION = 0.005


class SceneError(ValueError):
    """Base class for scene document problems."""


class SceneParseError(SceneError):
    """Document is malformed or violates the schema."""


class SceneSemanticError(SceneError):
    """Document parses but describes an inconsistent scene."""


def as_config(x) -> Config:
    q = np.asarray(x, dtype=float)
    if q.ndim != 1:
        raise ValueError(f"configuration must be 1-D, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise ValueError("configuration entries must be finite")
    return q


@dataclass(frozen=True)
class Bounds:
    lo: Config
    hi: Config

    def __post_init__(self):
        object.__setattr__(self, "lo", as_config(self.lo))
        object.__setattr__(self, "hi", as_config(self.hi))
        if self.lo.shape != self.hi.shape:
            raise ValueError("bounds lo/hi dimension mismatch")
        if not np.all(self.lo < self.hi):
            raise ValueError("bounds require lo < hi componentwise")

    @property
    def dimension(self) -> int:
        return self.lo.shape[0]

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.hi - self.lo))

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.all((pts >= self.lo) & (pts <= self.hi), axis=1)


@dataclass(frozen=True)
class Box:
    lo: Config
    hi: Config

    def __post_init__(self):
        object.__setattr__(self, "lo", as_config(self.lo))
        object.__setattr__(self, "hi", as_config(self.hi))
        if not np.all(self.lo < self.hi):
            raise ValueError("box requires lo < hi componentwise")

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.all((pts >= self.lo) & (pts <= self.hi), axis=1)


@dataclass(frozen=True)
class Sphere:
    center: Config
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_config(self.center))
        if self.radius <= 0:
            raise ValueError("sphere radius must be positive")

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.einsum("ij,ij->i", pts - self.center, pts - self.center) <= self.radius**2


@dataclass(frozen=True)
class Capsule:
    a: Config
    b: Config
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "a", as_config(self.a))
        object.__setattr__(self, "b", as_config(self.b))
        if self.radius <= 0:
            raise ValueError("capsule radius must be positive")

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        ab = self.b - self.a
        denom = float(ab @ ab)
        if denom == 0.0:
            d2 = np.einsum("ij,ij->i", pts - self.a, pts - self.a)
        else:
            t = np.clip((pts - self.a) @ ab / denom, 0.0, 1.0)
            closest = self.a + t[:, None] * ab
            d2 = np.einsum("ij,ij->i", pts - closest, pts - closest)
        return d2 <= self.radius**2


Obstacle = Box | Sphere | Capsule


@dataclass(frozen=True)
class OccupancyGrid:
    """2-D occupancy map; '#' cells block, '.' cells are free.

    A point is valid iff its containing cell is free (cell membership by
    floor indexing from the origin corner).
    """

    width: int
    height: int
    resolution: float
    origin: Config
    cells: np.ndarray  # (height, width) bool, True = occupied

    def __post_init__(self):
        object.__setattr__(self, "origin", as_config(self.origin))
        object.__setattr__(self, "cells", np.asarray(self.cells, dtype=bool))
        if self.width <= 0 or self.height <= 0:
            raise ValueError("grid dimensions must be positive")
        if self.resolution <= 0:
            raise ValueError("grid resolution must be positive")
        if self.cells.shape != (self.height, self.width):
            raise ValueError("grid cells shape must be (height, width)")

    def occupied(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        ij = np.floor((pts - self.origin) / self.resolution).astype(int)
        ix, iy = ij[:, 0], ij[:, 1]
        inside = (ix >= 0) & (ix < self.width) & (iy >= 0) & (iy < self.height)
        out = np.ones(len(pts), dtype=bool)  # outside the grid counts as occupied
        ii = np.where(inside)[0]
        out[ii] = self.cells[iy[ii], ix[ii]]
        return out


@dataclass(frozen=True)
class GoalSpec:
    kind: str  # "ball" | "escape"
    center: Config | None = None
    tolerance: float | None = None
    threshold: float | None = None

    def __post_init__(self):
        if self.kind == "ball":
            if self.center is None or self.tolerance is None or self.tolerance <= 0:
                raise ValueError("ball goal requires center and tolerance > 0")
            object.__setattr__(self, "center", as_config(self.center))
        elif self.kind == "escape":
            if self.threshold is None or self.threshold <= 0:
                raise ValueError("escape goal requires threshold > 0")
        else:
            raise ValueError(f"unknown goal kind {self.kind!r}")


@dataclass(frozen=True)
class Scene:
    name: str
    bounds: Bounds
    start: Config
    goal: GoalSpec
    obstacles: tuple[Obstacle, ...] = ()
    grid: OccupancyGrid | None = None
    resolution_fraction: float = DEFAULT_RESOLUTION_FRACTION
    _validate_start: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "start", as_config(self.start))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        n = self.bounds.dimension
        if self.start.shape[0] != n:
            raise SceneSemanticError("start dimension does not match bounds")
        if self.grid is not None and self.obstacles:
            raise SceneSemanticError("scene must use either obstacles or a grid, not both")
        if self.grid is not None and n != 2:
            raise SceneSemanticError("occupancy grids are 2-D only")
        if self.goal.kind == "ball" and self.goal.center.shape[0] != n:
            raise SceneSemanticError("goal center dimension does not match bounds")
        if self._validate_start and not is_state_valid(self, self.start):
            raise SceneSemanticError("start configuration is not collision-free")

    @property
    def dimension(self) -> int:
        return self.bounds.dimension

    @property
    def motion_resolution(self) -> float:
        """Absolute step length for discretized motion checks."""
        return self.resolution_fraction * self.bounds.diagonal


def states_valid(scene: Scene, pts: np.ndarray) -> np.ndarray:
    """Vectorized validity of a (M, N) block of configurations."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if pts.shape[1] != scene.dimension:
        raise ValueError(f"dimension mismatch: scene is {scene.dimension}-D, points are {pts.shape[1]}-D")
    ok = scene.bounds.contains(pts)
    if scene.grid is not None:
        ok &= ~scene.grid.occupied(pts)
    else:
        for obs in scene.obstacles:
            if not ok.any():
                break
            ok &= ~obs.contains(pts)
    return ok


def is_state_valid(scene: Scene, q: Config) -> bool:
    return bool(states_valid(scene, np.asarray(q, dtype=float)[None, :])[0])


def distance(a: Config, b: Config) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    return float(np.linalg.norm(a - b))


def _segment_points(a: Config, b: Config, step: float) -> np.ndarray:
    d = distance(a, b)
    n = max(1, math.ceil(d / step))
    t = np.linspace(0.0, 1.0, n + 1)
    return a + t[:, None] * (b - a)


def check_motion(scene: Scene, a: Config, b: Config) -> bool:
    """True iff the straight segment a-b is valid at the scene's resolution."""
    a = as_config(a)
    b = as_config(b)
    pts = _segment_points(a, b, scene.motion_resolution)
    return bool(states_valid(scene, pts).all())


def motions_valid_fan(scene: Scene, q0: Config, targets: np.ndarray) -> np.ndarray:
    """Validity of straight motions from a common origin to each target row.

    All segments are discretized at the same absolute resolution; equivalent
    to calling check_motion per target but amortizes the collision queries.
    """
    q0 = as_config(q0)
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    d = np.linalg.norm(targets - q0, axis=1)
    step = scene.motion_resolution
    n = max(1, math.ceil(float(d.max()) / step)) if len(d) else 1
    t = np.linspace(0.0, 1.0, n + 1)
    pts = q0 + t[None, :, None] * (targets[:, None, :] - q0)
    ok = states_valid(scene, pts.reshape(-1, scene.dimension)).reshape(len(targets), n + 1)
    return ok.all(axis=1)


def goal_satisfied(scene: Scene, q: Config) -> bool:
    g = scene.goal
    if g.kind == "ball":
        return distance(q, g.center) <= g.tolerance
    return distance(q, scene.start) >= g.threshold


def _parse_obstacle(entry: dict) -> Obstacle:
    kind = entry.get("kind")
    try:
        if kind == "box":
            return Box(entry["lo"], entry["hi"])
        if kind == "sphere":
            return Sphere(entry["center"], entry["radius"])
        if kind == "capsule":
            return Capsule(entry["a"], entry["b"], entry["radius"])
    except KeyError as exc:
        raise SceneParseError(f"obstacle of kind {kind!r} missing field {exc}") from exc
    except ValueError as exc:
        raise SceneSemanticError(str(exc)) from exc
    raise SceneSemanticError(f"unknown obstacle kind {kind!r}")


def _parse_goal(entry: dict) -> GoalSpec:
    kind = entry.get("kind")
    try:
        if kind == "ball":
            return GoalSpec("ball", center=entry["center"], tolerance=entry["tolerance"])
        if kind == "escape":
            return GoalSpec("escape", threshold=entry["threshold"])
    except KeyError as exc:
        raise SceneParseError(f"goal of kind {kind!r} missing field {exc}") from exc
    except ValueError as exc:
        raise SceneSemanticError(str(exc)) from exc
    raise SceneSemanticError(f"unknown goal kind {kind!r}")


def _parse_grid(entry: dict) -> OccupancyGrid:
    try:
        rows = entry["rows"]
        width, height = entry["width"], entry["height"]
        if len(rows) != height or any(len(r) != width for r in rows):
            raise SceneParseError("grid rows do not match width/height")
        bad = set("".join(rows)) - {"#", "."}
        if bad:
            raise SceneParseError(f"grid rows contain invalid characters {sorted(bad)}")
        cells = np.array([[c == "#" for c in row] for row in rows], dtype=bool)
        return OccupancyGrid(width, height, entry["resolution"], entry["origin"], cells)
    except KeyError as exc:
        raise SceneParseError(f"grid missing field {exc}") from exc
    except ValueError as exc:
        raise SceneSemanticError(str(exc)) from exc


def load_scene(text: str) -> Scene:
    """Parse and validate a scene document (JSON)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SceneParseError("scene document must be an object")
    for key in ("name", "dimension", "bounds", "start", "goal"):
        if key not in doc:
            raise SceneParseError(f"scene document missing {key!r}")
    has_obs = "obstacles" in doc
    has_grid = "grid" in doc
    if has_obs == has_grid:
        raise SceneParseError("exactly one of 'obstacles'/'grid' must be present")
    try:
        bounds = Bounds(doc["bounds"]["lo"], doc["bounds"]["hi"])
    except KeyError as exc:
        raise SceneParseError(f"bounds missing field {exc}") from exc
    except ValueError as exc:
        raise SceneSemanticError(str(exc)) from exc
    if bounds.dimension != doc["dimension"]:
        raise SceneSemanticError("declared dimension does not match bounds")
    obstacles = tuple(_parse_obstacle(o) for o in doc["obstacles"]) if has_obs else ()
    grid = _parse_grid(doc["grid"]) if has_grid else None
    scene = Scene(
        name=str(doc["name"]),
        bounds=bounds,
        start=doc["start"],
        goal=_parse_goal(doc["goal"]),
        obstacles=obstacles,
        grid=grid,
        resolution_fraction=doc.get("resolution_fraction", DEFAULT_RESOLUTION_FRACTION),
    )
    return scene


def load_scene_file(path) -> Scene:
    with open(path, "r", encoding="utf-8") as fh:
        return load_scene(fh.read())


def scene_to_document(scene: Scene) -> dict:
    """Inverse of load_scene, for generated scenes."""
    doc: dict = {
        "name": scene.name,
        "dimension": scene.dimension,
        "bounds": {"lo": scene.bounds.lo.tolist(), "hi": scene.bounds.hi.tolist()},
        "start": scene.start.tolist(),
    }
    if scene.grid is not None:
        g = scene.grid
        rows = ["".join("#" if c else "." for c in row) for row in g.cells]
        doc["grid"] = {
            "width": g.width, "height": g.height, "resolution": g.resolution,
            "origin": g.origin.tolist(), "rows": rows,
        }
    else:
        obs = []
        for o in scene.obstacles:
            if isinstance(o, Box):
                obs.append({"kind": "box", "lo": o.lo.tolist(), "hi": o.hi.tolist()})
            elif isinstance(o, Sphere):
                obs.append({"kind": "sphere", "center": o.center.tolist(), "radius": o.radius})
            else:
                obs.append({"kind": "capsule", "a": o.a.tolist(), "b": o.b.tolist(), "radius": o.radius})
        doc["obstacles"] = obs
    if scene.goal.kind == "ball":
        doc["goal"] = {"kind": "ball", "center": scene.goal.center.tolist(), "tolerance": scene.goal.tolerance}
    else:
        doc["goal"] = {"kind": "escape", "threshold": scene.goal.threshold}
    if scene.resolution_fraction != DEFAULT_RESOLUTION_FRACTION:
        doc["resolution_fraction"] = scene.resolution_fraction
    return doc
