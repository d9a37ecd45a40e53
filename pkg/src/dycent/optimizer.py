"""The angle-probed optimizer.

One step works on triangle geometry: from the current point, walk a small
fixed distance h along a random direction perpendicular to the (negative)
gradient g1, measure the angle theta between g1 and the negative gradient
g2 at the probe point, and step d = h * cot(theta) along normalized g1 —
the estimated distance to the point where the two gradient lines meet.
A small epsilon is added to theta so cot stays bounded, and an EMA of past
step sizes doubles any step that falls below its running average.
"""

import math
from dataclasses import dataclass

import numpy as np

from .objective import Objective
from .vecmath import (
    ParamVector,
    RngHandle,
    ZeroGradientError,
    angle_between,
    make_rng,
    norm,
    sample_perpendicular,
)

D_AVG_INIT_MODES = ("first_step", "zero")


class NonFiniteStepError(ArithmeticError):
    """The computed step size came out NaN/Inf; carries the partial trace."""

    def __init__(self, message: str, trace: "StepTrace | None" = None):
        super().__init__(message)
        self.trace = trace


@dataclass
class DycentConfig:
    """Hyperparameters of the angle-probed stepper.

    h: perpendicular probe distance (parameter-space units).
    beta: EMA decay for the average step size.
    epsilon: radians added to the measured angle to bound cot.
    enable_doubling: double steps that fall below the EMA.
    clamp_nonnegative_step: floor the step at 0 (off by default; cot can
        legitimately go negative when the angle exceeds 90 degrees).
    d_avg_init_mode: "first_step" seeds the EMA with the first step size
        (so the first step never doubles); "zero" starts the EMA at 0.
    """

    h: float = 1e-2
    beta: float = 0.9
    epsilon: float = 1e-8
    enable_doubling: bool = True
    clamp_nonnegative_step: bool = False
    d_avg_init_mode: str = "first_step"

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"h must be > 0, got {self.h}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must be in [0, 1), got {self.beta}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.d_avg_init_mode not in D_AVG_INIT_MODES:
            raise ValueError(
                f"d_avg_init_mode must be one of {D_AVG_INIT_MODES}, got {self.d_avg_init_mode!r}"
            )


@dataclass
class DycentState:
    """Evolving state of one run: the step-size EMA and its RNG."""

    rng: RngHandle
    d_avg: float = 0.0
    step_count: int = 0

    @classmethod
    def from_seed(cls, seed: int) -> "DycentState":
        return cls(rng=make_rng(seed))


@dataclass
class StepTrace:
    """Full record of one step, sufficient to re-check its geometry."""

    x1: ParamVector
    x2: ParamVector
    g1: ParamVector
    g2: ParamVector
    p1: ParamVector
    theta: float
    d_raw: float
    d_used: float
    doubled: bool
    f_before: float
    f_after: float


def update_average(state: DycentState, cfg: DycentConfig, d: float) -> float:
    """Fold step size d into the EMA; first call may seed it, per config."""
    if cfg.d_avg_init_mode == "first_step" and state.step_count == 0:
        state.d_avg = d
    else:
        state.d_avg = cfg.beta * state.d_avg + (1.0 - cfg.beta) * d
    return state.d_avg


def maybe_double(d: float, d_avg: float, cfg: DycentConfig) -> tuple[float, bool]:
    """Double d when doubling is enabled and d fell strictly below the EMA."""
    if cfg.enable_doubling and d < d_avg:
        return 2.0 * d, True
    return d, False


def dycent_step(
    x: ParamVector, obj: Objective, cfg: DycentConfig, state: DycentState
) -> tuple[ParamVector, StepTrace]:
    """One angle-probed step from x; returns the new point and its trace.

    Raises ZeroGradientError at stationary points (the caller decides
    whether to stop or perturb) and NonFiniteStepError if the step size
    degenerates.
    """
    x1 = np.asarray(x, dtype=np.float64)
    g1 = -obj.gradient(x1)
    g1_norm = norm(g1)
    if g1_norm == 0.0:
        raise ZeroGradientError("stationary point: gradient vanished")

    p1 = sample_perpendicular(g1, state.rng)
    x2 = x1 - cfg.h * p1
    g2 = -obj.gradient(x2)

    theta = angle_between(g1, g2) + cfg.epsilon
    d_raw = cfg.h / math.tan(theta)
    if not math.isfinite(d_raw):
        trace = StepTrace(x1, x2, g1, g2, p1, theta, d_raw, d_raw, False,
                          obj.value(x1), math.nan)
        raise NonFiniteStepError(f"step size h*cot(theta) is not finite at theta={theta}", trace)

    d_avg = update_average(state, cfg, d_raw)
    d_used, doubled = maybe_double(d_raw, d_avg, cfg)
    if cfg.clamp_nonnegative_step:
        d_used = max(d_used, 0.0)

    x_new = x1 + d_used * g1 / g1_norm
    state.step_count += 1

    trace = StepTrace(
        x1=x1.copy(),
        x2=x2,
        g1=g1,
        g2=g2,
        p1=p1,
        theta=theta,
        d_raw=d_raw,
        d_used=d_used,
        doubled=doubled,
        f_before=obj.value(x1),
        f_after=obj.value(x_new),
    )
    return x_new, trace


def run(
    x0: ParamVector,
    obj: Objective,
    cfg: DycentConfig,
    max_iters: int,
    seed: int,
) -> list[StepTrace]:
    """Iterate dycent_step up to max_iters times from x0.

    Stops early (without error) when a stationary point is reached;
    numerical failures propagate with the offending trace attached.
    """
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    state = DycentState.from_seed(seed)
    x = np.asarray(x0, dtype=np.float64)
    traces: list[StepTrace] = []
    for _ in range(max_iters):
        try:
            x, trace = dycent_step(x, obj, cfg, state)
        except ZeroGradientError:
            break
        traces.append(trace)
    return traces
