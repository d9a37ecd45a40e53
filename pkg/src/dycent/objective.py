"""Scalar fields with exact gradients: the abstraction every optimizer in
this package minimizes, plus the analytic test surfaces used throughout the
test suite and harness.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .vecmath import DimensionError, ParamVector, make_rng


@dataclass(frozen=True)
class BatchContext:
    """Pin of a minibatch: which dataset rows the objective evaluates on."""

    batch_indices: np.ndarray
    epoch: int = 0
    step: int = 0

    def __post_init__(self):
        idx = np.asarray(self.batch_indices, dtype=np.int64)
        if idx.ndim != 1 or idx.size == 0:
            raise ValueError("batch must be a non-empty index vector")
        object.__setattr__(self, "batch_indices", idx)


class Objective:
    """Evaluatable scalar field f with an exact gradient.

    value(x) and gradient(x) are deterministic functions of x (and, for
    dataset-backed objectives, of the currently pinned batch).
    lipschitz_bound is the gradient's Lipschitz constant when known.
    """

    dim: int
    lipschitz_bound: float | None = None
    name: str = ""

    def value(self, x: ParamVector) -> float:
        raise NotImplementedError

    def gradient(self, x: ParamVector) -> ParamVector:
        raise NotImplementedError

    def set_batch(self, ctx: BatchContext) -> None:
        """Pin a minibatch. Only dataset-backed objectives support this."""
        raise NotImplementedError(f"objective {self.name!r} is not dataset-backed")

    def _check_dim(self, x: ParamVector) -> ParamVector:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise DimensionError(f"expected shape ({self.dim},), got {x.shape}")
        return x


class AnalyticObjective(Objective):
    """Objective built from closed-form value and gradient callables."""

    def __init__(
        self,
        dim: int,
        value_fn: Callable[[np.ndarray], float],
        grad_fn: Callable[[np.ndarray], np.ndarray],
        lipschitz_bound: float | None = None,
        name: str = "",
    ):
        if dim < 1:
            raise DimensionError("objective dimension must be >= 1")
        self.dim = dim
        self._value_fn = value_fn
        self._grad_fn = grad_fn
        self.lipschitz_bound = lipschitz_bound
        self.name = name

    def value(self, x: ParamVector) -> float:
        x = self._check_dim(x)
        return float(self._value_fn(x))

    def gradient(self, x: ParamVector) -> ParamVector:
        x = self._check_dim(x)
        return np.asarray(self._grad_fn(x), dtype=np.float64)


def toy_a() -> Objective:
    """Wavy 2-D surface f(x, y) = -y^2 sin(x).

    Unbounded below; the y = 0 plane is entirely flat (zero value, zero
    gradient), which makes (x, 0) starts stationary points.
    """

    def value(p):
        x, y = p
        return -(y * y) * np.sin(x)

    def grad(p):
        x, y = p
        return np.array([-(y * y) * np.cos(x), -2.0 * y * np.sin(x)])

    return AnalyticObjective(2, value, grad, name="toy_a")


# Below this squared radius toy_b switches to its limit values; the
# neglected Taylor terms are ~1e-17, under float64 resolution at f ~ 1.
_TOY_B_LIMIT_R2 = 1e-8


def toy_b() -> Objective:
    """Ripple surface f(x, y) = -sin(x^2 + y^2) / (x^2 + y^2).

    The removable singularity at the origin is patched with the limit
    values f -> -1 and grad -> (0, 0).
    """

    def value(p):
        u = float(p @ p)
        if u < _TOY_B_LIMIT_R2:
            return -1.0
        return -np.sin(u) / u

    def grad(p):
        u = float(p @ p)
        if u < _TOY_B_LIMIT_R2:
            return np.zeros(2)
        dfdu = (np.sin(u) - u * np.cos(u)) / (u * u)
        return dfdu * 2.0 * p

    return AnalyticObjective(2, value, grad, name="toy_b")


def isotropic_quadratic(n: int) -> Objective:
    """f(x) = ||x||^2 / 2 with gradient x; Lipschitz constant exactly 1."""
    if n < 1:
        raise DimensionError("quadratic dimension must be >= 1")
    return AnalyticObjective(
        n,
        lambda x: 0.5 * float(x @ x),
        lambda x: x.copy(),
        lipschitz_bound=1.0,
        name="isotropic_quadratic",
    )


def spd_quadratic(n: int, seed: int, condition: float = 10.0) -> Objective:
    """f(x) = x^T A x / 2 for a random SPD matrix A with known top eigenvalue.

    Eigenvalues are spread log-uniformly over [L/condition, L] with L = 1,
    in a random orthogonal frame, so lipschitz_bound is exact.
    """
    if n < 2:
        raise DimensionError("spd quadratic needs dimension >= 2")
    if condition < 1.0:
        raise ValueError("condition number must be >= 1")
    rng = make_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigs = np.exp(np.linspace(np.log(1.0 / condition), 0.0, n))
    a = q @ np.diag(eigs) @ q.T
    a = 0.5 * (a + a.T)
    lip = float(np.max(np.linalg.eigvalsh(a)))
    return AnalyticObjective(
        n,
        lambda x: 0.5 * float(x @ (a @ x)),
        lambda x: a @ x,
        lipschitz_bound=lip,
        name="spd_quadratic",
    )


def rosenbrock(n: int) -> Objective:
    """Chained Rosenbrock with a = 1, b = 100; global minimum at the ones vector."""
    if n < 2:
        raise DimensionError("rosenbrock needs dimension >= 2")

    def value(x):
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))

    def grad(x):
        g = np.zeros_like(x)
        g[:-1] = -400.0 * x[:-1] * (x[1:] - x[:-1] ** 2) - 2.0 * (1.0 - x[:-1])
        g[1:] += 200.0 * (x[1:] - x[:-1] ** 2)
        return g

    return AnalyticObjective(n, value, grad, name="rosenbrock")


def set_batch(obj: Objective, ctx: BatchContext) -> None:
    """Functional spelling of obj.set_batch(ctx)."""
    obj.set_batch(ctx)
