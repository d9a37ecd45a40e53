import math

import numpy as np
import pytest

from dycent.objective import (
    AnalyticObjective,
    BatchContext,
    isotropic_quadratic,
    rosenbrock,
    spd_quadratic,
    toy_a,
    toy_b,
)
from dycent.vecmath import DimensionError

from oracles import central_diff_gradient, relative_error


def assert_gradient_matches_fd(obj, points, tol=1e-5):
    for x in points:
        fd = central_diff_gradient(obj.value, x)
        assert relative_error(obj.gradient(x), fd) <= tol, f"gradient mismatch at {x}"


class TestToyA:
    def test_flat_plane_start_is_stationary(self):
        obj = toy_a()
        x = np.array([-2.0, 0.0])
        assert obj.value(x) == 0.0
        assert np.array_equal(obj.gradient(x), np.zeros(2))

    def test_symbolic_point(self):
        obj = toy_a()
        x = np.array([math.pi / 2, 1.0])
        assert obj.value(x) == pytest.approx(-1.0, abs=1e-15)
        assert obj.gradient(x) == pytest.approx(np.array([0.0, -2.0]), abs=1e-12)
        fd = central_diff_gradient(obj.value, x)
        assert relative_error(obj.gradient(x), fd) <= 1e-5

    def test_gradient_vs_finite_differences(self, rng):
        obj = toy_a()
        points = rng.uniform(-3.0, 3.0, size=(100, 2))
        assert_gradient_matches_fd(obj, points)


class TestToyB:
    def test_ripple_start_value(self):
        # frozen from a 40-digit evaluation of -sin(18)/18
        assert toy_b().value(np.array([3.0, 3.0])) == pytest.approx(
            0.04172151370953756, abs=1e-15
        )

    def test_origin_limit(self):
        obj = toy_b()
        assert obj.value(np.zeros(2)) == -1.0
        assert np.array_equal(obj.gradient(np.zeros(2)), np.zeros(2))

    def test_continuous_through_origin(self):
        assert abs(toy_b().value(np.array([1e-5, 0.0])) - (-1.0)) <= 1e-8

    def test_gradient_vs_finite_differences(self, rng):
        obj = toy_b()
        points = [p for p in rng.uniform(-4.0, 4.0, size=(150, 2)) if np.linalg.norm(p) > 0.1]
        assert len(points) >= 100
        assert_gradient_matches_fd(obj, points[:100])


class TestIsotropicQuadratic:
    def test_value_and_gradient(self):
        obj = isotropic_quadratic(2)
        x = np.array([3.0, 4.0])
        assert obj.value(x) == 12.5
        assert np.array_equal(obj.gradient(x), x)

    def test_minimum(self):
        assert isotropic_quadratic(3).value(np.zeros(3)) == 0.0

    def test_lipschitz_bound(self):
        assert isotropic_quadratic(4).lipschitz_bound == 1.0

    def test_lipschitz_exact_on_random_pairs(self, rng):
        obj = isotropic_quadratic(5)
        for _ in range(50):
            x, y = rng.standard_normal((2, 5))
            lhs = np.linalg.norm(obj.gradient(x) - obj.gradient(y))
            assert lhs <= 1.0 * np.linalg.norm(x - y) + 1e-12

    def test_rejects_bad_dim(self):
        with pytest.raises(DimensionError):
            isotropic_quadratic(0)


class TestSpdQuadratic:
    def test_lipschitz_is_max_curvature(self, rng):
        obj = spd_quadratic(6, seed=3)
        L = obj.lipschitz_bound
        for _ in range(100):
            x, y = rng.standard_normal((2, 6))
            lhs = float(np.linalg.norm(obj.gradient(x) - obj.gradient(y)))
            assert lhs <= L * float(np.linalg.norm(x - y)) * (1 + 1e-12)

    def test_gradient_vs_finite_differences(self, rng):
        obj = spd_quadratic(4, seed=9)
        assert_gradient_matches_fd(obj, rng.standard_normal((50, 4)))

    def test_deterministic_in_seed(self):
        a = spd_quadratic(5, seed=11)
        b = spd_quadratic(5, seed=11)
        x = np.arange(5.0)
        assert a.value(x) == b.value(x)
        assert np.array_equal(a.gradient(x), b.gradient(x))


class TestRosenbrock:
    def test_known_minimizer(self):
        for n in (2, 5):
            assert rosenbrock(n).value(np.ones(n)) == 0.0

    def test_origin_value(self):
        assert rosenbrock(2).value(np.zeros(2)) == 1.0

    def test_gradient_vs_finite_differences(self, rng):
        obj = rosenbrock(4)
        points = rng.uniform(-2.0, 2.0, size=(100, 4))
        assert_gradient_matches_fd(obj, points)


class TestObjectiveInterface:
    def test_dimension_checked(self):
        with pytest.raises(DimensionError):
            toy_a().value(np.zeros(3))

    def test_set_batch_unsupported_on_analytic(self):
        with pytest.raises(NotImplementedError):
            toy_a().set_batch(BatchContext(np.array([0])))

    def test_batch_context_rejects_empty(self):
        with pytest.raises(ValueError):
            BatchContext(np.array([], dtype=np.int64))

    def test_linear_objective_helper(self):
        c = np.array([2.0, -1.0])
        obj = AnalyticObjective(2, lambda x: float(c @ x), lambda x: c.copy())
        assert obj.value(np.array([1.0, 1.0])) == 1.0
        assert np.array_equal(obj.gradient(np.zeros(2)), c)
