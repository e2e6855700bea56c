"""Principal escape direction and the axis-aligned cylinder sampler.

The escape direction is the leading eigenvector of the second moments of
displacements from the start configuration. It is maintained incrementally:
each new valid sample updates the running moments and the eigenvector is
re-extracted, with a dot-product sign rule so the axis never flips.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .cspace import Config, as_config
from .rng import RngStream

# Below this leading eigengap the moments carry no directional information.
DEGENERATE_EIGENGAP = 1e-12

# Dimension threshold for the dense eigensolver; beyond it, warm-started
# power iteration is used.
DENSE_EIG_MAX_DIM = 8

POWER_ITER_TOL = 1e-13
POWER_ITER_MAX = 10_000


class DegenerateAxisError(ValueError):
    """No direction can be extracted (all displacements are zero)."""


@dataclass(frozen=True)
class PrincipalAxis:
    axis: Config          # unit escape direction
    origin: Config        # anchor (start configuration)
    count: int            # number of accumulated displacements
    disp_sum: Config      # sum of displacements
    outer_sum: np.ndarray  # sum of displacement outer products
    eigenvalue: float     # leading eigenvalue of the mean outer product


def _leading_eigvec_dense(m: np.ndarray) -> tuple[np.ndarray, float, float]:
    w, v = np.linalg.eigh(m)
    gap = float(w[-1] - w[-2]) if len(w) > 1 else float(w[-1])
    return v[:, -1], float(w[-1]), gap


def _leading_eigvec_power(m: np.ndarray, v0: np.ndarray) -> tuple[np.ndarray, float]:
    v = v0 / np.linalg.norm(v0)
    lam = float(v @ m @ v)
    for _ in range(POWER_ITER_MAX):
        w = m @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            break
        w /= norm
        new_lam = float(w @ m @ w)
        if abs(new_lam - lam) <= POWER_ITER_TOL * max(abs(new_lam), 1.0) and float(abs(w @ v)) > 1.0 - 1e-14:
            v, lam = w, new_lam
            break
        v, lam = w, new_lam
    return v, lam


def _orient_initial(vec: np.ndarray, disp_mean: np.ndarray) -> np.ndarray:
    d = float(vec @ disp_mean)
    if d < 0:
        return -vec
    if d == 0:
        nz = np.nonzero(vec)[0]
        if len(nz) and vec[nz[0]] < 0:
            return -vec
    return vec


def principal_axis(samples: np.ndarray, origin: Config, center_mean: bool = False) -> PrincipalAxis:
    """Leading direction of the displacement second moments.

    The sign points toward the mean displacement; with mean centering enabled
    the moments are taken about the sample mean instead of the origin.
    """
    origin = as_config(origin)
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if samples.size == 0:
        raise DegenerateAxisError("no samples")
    disp = samples - origin
    if not np.any(np.linalg.norm(disp, axis=1) > 0):
        raise DegenerateAxisError("all samples coincide with the origin")
    count = len(disp)
    disp_sum = disp.sum(axis=0)
    outer_sum = disp.T @ disp
    moments = outer_sum / count
    if center_mean:
        mu = disp_sum / count
        moments = moments - np.outer(mu, mu)
    vec, lam, _gap = _leading_eigvec_dense(moments)
    vec = _orient_initial(vec, disp_sum / count)
    return PrincipalAxis(axis=vec, origin=origin, count=count,
                         disp_sum=disp_sum, outer_sum=outer_sum, eigenvalue=lam)


def recalibrate_axis(prev: PrincipalAxis, new_sample: Config) -> PrincipalAxis:
    """Fold one displacement into the running moments and re-extract the axis.

    The re-extracted eigenvector is negated when its dot product with the
    previous axis is negative, so the escape direction cannot flip through
    the sign ambiguity of the eigendecomposition.
    """
    new_sample = as_config(new_sample)
    d = new_sample - prev.origin
    count = prev.count + 1
    disp_sum = prev.disp_sum + d
    outer_sum = prev.outer_sum + np.outer(d, d)
    moments = outer_sum / count
    n = len(d)
    if n <= DENSE_EIG_MAX_DIM:
        vec, lam, gap = _leading_eigvec_dense(moments)
    else:
        vec, lam = _leading_eigvec_power(moments, prev.axis)
        gap = np.inf  # power iteration converged on a dominant direction
    if gap < DEGENERATE_EIGENGAP:
        vec, lam = prev.axis, prev.eigenvalue
    elif float(vec @ prev.axis) < 0:
        vec = -vec
    return PrincipalAxis(axis=vec, origin=prev.origin, count=count,
                         disp_sum=disp_sum, outer_sum=outer_sum, eigenvalue=lam)


def orthonormal_basis(a: Config) -> np.ndarray:
    """N x (N-1) matrix whose columns are orthonormal and orthogonal to a."""
    a = np.asarray(a, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise DegenerateAxisError("cannot build a basis orthogonal to the zero vector")
    n = a.shape[0]
    q = a / norm
    full, _ = np.linalg.qr(np.concatenate([q[:, None], np.eye(n)], axis=1))
    return full[:, 1:n]


@dataclass(frozen=True)
class CylinderSpec:
    axis: PrincipalAxis
    direction: int        # +1 along the axis, -1 against it
    h_min: float
    h_max: float
    radius: float

    def __post_init__(self):
        if self.direction not in (+1, -1):
            raise ValueError("direction must be +1 or -1")
        if not (0.0 <= self.h_min <= self.h_max):
            raise ValueError("require 0 <= h_min <= h_max")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")


def sample_cylinder_with_height(spec: CylinderSpec, rng: RngStream) -> tuple[Config, float]:
    """Uniform sample in the cylinder around the signed axis; also returns the
    drawn axial height (the sampler's own radial coordinate)."""
    a0 = spec.axis.axis * spec.direction
    n = a0.shape[0]
    h = float(rng.gen.uniform(spec.h_min, spec.h_max))
    axial = h * a0
    # Uniform draw in the (N-1)-ball: radius corrected for volume density.
    u = float(rng.gen.uniform(0.0, 1.0))
    t = rng.gen.standard_normal(n - 1)
    tn = float(np.linalg.norm(t))
    if tn == 0.0:
        t = np.zeros(n - 1)
        t[0] = 1.0
        tn = 1.0
    p = spec.radius * u ** (1.0 / (n - 1))
    b = p * t / tn
    q_basis = orthonormal_basis(axial if h > 0 else a0)
    return spec.axis.origin + axial + q_basis @ b, h


def sample_cylinder(spec: CylinderSpec, rng: RngStream) -> Config:
    q, _ = sample_cylinder_with_height(spec, rng)
    return q
