"""Dense vector arithmetic, seeded RNG, and the geometric primitives
(perpendicular sampling, angle measurement) the angle-probed stepper is
built from.

All vectors are flat 1-D float64 numpy arrays.
"""

import math

import numpy as np

ParamVector = np.ndarray
RngHandle = np.random.Generator

# Gaussian draws whose residual after projecting out g are shorter than
# this fraction of the draw are discarded and resampled.
RESAMPLE_THRESHOLD = 1e-12


class DimensionError(ValueError):
    """Vector lengths are inconsistent, or the space is too small."""


class ZeroGradientError(ValueError):
    """An operation that needs a direction was handed the zero vector.

    Doubles as the stationary-point signal: optimizer loops catch it and
    stop instead of stepping.
    """


def make_rng(seed: int) -> RngHandle:
    """Seeded generator; the same seed yields the same stream on every platform."""
    return np.random.default_rng(seed)


def as_vector(values) -> ParamVector:
    """Coerce to a 1-D float64 array, rejecting empty or non-finite input."""
    v = np.atleast_1d(np.asarray(values, dtype=np.float64))
    if v.ndim != 1 or v.size < 1:
        raise DimensionError(f"expected a flat vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector contains NaN or Inf")
    return v


def dot(a: ParamVector, b: ParamVector) -> float:
    """Inner product; raises DimensionError on length mismatch."""
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.dot(a, b))


def norm(a: ParamVector) -> float:
    """Euclidean norm; zero only for the zero vector."""
    return float(np.linalg.norm(a))


def sample_perpendicular(g: ParamVector, rng: RngHandle) -> ParamVector:
    """Unit vector drawn uniformly from the sphere of the hyperplane orthogonal to g.

    Draws a standard-normal vector, projects out the g-component, and
    normalizes; near-parallel draws (residual below RESAMPLE_THRESHOLD of
    the draw) are resampled.
    """
    if g.size < 2:
        raise DimensionError("no perpendicular direction exists in 1 dimension")
    ng = norm(g)
    if ng == 0.0:
        raise ZeroGradientError("cannot pick a direction perpendicular to the zero vector")
    g_hat = g / ng
    while True:
        v = rng.standard_normal(g.size)
        w = v - np.dot(v, g_hat) * g_hat
        nw = float(np.linalg.norm(w))
        if nw > RESAMPLE_THRESHOLD * float(np.linalg.norm(v)):
            return w / nw


def angle_between(a: ParamVector, b: ParamVector) -> float:
    """Angle in radians, in [0, pi], between two nonzero vectors.

    The cosine is formed from raw inner products and clamped to [-1, 1]
    before arccos, so exact parallels (including a vs a) come out as
    exactly 0 or pi.
    """
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    daa = float(np.dot(a, a))
    dbb = float(np.dot(b, b))
    if daa == 0.0 or dbb == 0.0:
        raise ZeroGradientError("angle with the zero vector is undefined")
    denom = math.sqrt(daa * dbb)
    if denom == 0.0 or not math.isfinite(denom):
        # product under/overflowed; renormalize and retry on unit vectors
        a = a / math.sqrt(daa)
        b = b / math.sqrt(dbb)
        cos = float(np.dot(a, b)) / math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
    else:
        cos = float(np.dot(a, b)) / denom
    cos = max(-1.0, min(1.0, cos))
    return math.acos(cos)
