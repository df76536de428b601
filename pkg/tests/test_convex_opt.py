import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radonurn.convex_opt import (
    ZOO,
    EuclideanDistance,
    L1Distance,
    Linear,
    LogSumExp,
    MaxAffine,
    Quadratic,
    default_c_quality,
    default_stop_size,
    lower_bound_min,
    success_cap,
)
from radonurn.datasets import generate
from radonurn.errors import DomainError, IterationBudgetExceeded


def random_function(kind, rng, d):
    k = 4
    return {
        "linear": lambda: Linear(rng.standard_normal(d), rng.standard_normal()),
        "quadratic": lambda: Quadratic(rng.standard_normal(d)),
        "l1": lambda: L1Distance(rng.standard_normal(d)),
        "l2": lambda: EuclideanDistance(rng.standard_normal(d)),
        "max-affine": lambda: MaxAffine(rng.standard_normal((k, d)), rng.standard_normal(k)),
        "logsumexp": lambda: LogSumExp(rng.standard_normal((k, d)), rng.standard_normal(k)),
    }[kind]()


def test_linear_value_is_a_lower_bound():
    rng = np.random.default_rng(0)
    for trial in range(10):
        P = rng.standard_normal((300, 3))
        f = Linear(rng.standard_normal(3), 0.5)
        res = lower_bound_min(P, f, seed=trial)
        assert res.value <= float(np.min(P @ f.a + f.b)) + 1e-12


def test_squared_norm_on_the_unit_circle():
    a = 2 * np.pi * np.arange(100) / 100
    P = np.stack([np.cos(a), np.sin(a)], axis=1)
    res = lower_bound_min(P, Quadratic([0.0, 0.0]), seed=1)
    assert res.value <= 1.0 + 1e-12
    assert res.value == pytest.approx(Quadratic([0.0, 0.0])(res.point)[0])


def test_l1_distance_to_a_data_point_is_exactly_zero():
    P = generate("uniform-square", 400, 2, seed=5)
    res = lower_bound_min(P, L1Distance(P[17]), seed=2)
    assert res.value == 0.0


def test_zero_subgradient_stops_immediately():
    P = np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] * 10)
    res = lower_bound_min(P, Linear([0.0, 0.0], 3.0), seed=0)
    assert res.stopped_on_zero_subgradient
    assert res.oracle_calls == 1 and res.value == 3.0


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(sorted(ZOO)),
    st.integers(1, 4),
    st.integers(1, 400),
    st.integers(0, 2**32 - 1),
)
def test_zoo_soundness_and_bookkeeping(kind, d, n, seed):
    rng = np.random.default_rng(seed)
    P = rng.standard_normal((n, d)) * rng.choice([0.1, 1.0, 10.0])
    f = random_function(kind, rng, d)
    res = lower_bound_min(P, f, seed=seed)
    exact = min(f(p)[0] for p in P)
    assert res.value <= exact + 1e-12
    assert res.successful_iterations <= success_cap(n, d)
    # value is the minimum over everything evaluated; oracle_calls counts every call
    evaluated = [v for _, v in res.evaluated_centers]
    assert res.value <= min(evaluated, default=math.inf)
    assert res.oracle_calls == len(evaluated) + (0 if res.stopped_on_zero_subgradient else res.final_residual)
    assert res.value == pytest.approx(f(res.point)[0], rel=1e-12, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(ZOO)), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_zoo_subgradient_inequality(kind, d, seed):
    rng = np.random.default_rng(seed)
    f = random_function(kind, rng, d)
    X = 3 * rng.standard_normal((20, d))
    for x in X:
        fx, g = f(x)
        for y in X:
            assert f(y)[0] >= fx + g @ (y - x) - 1e-9 * (1 + abs(fx))


def test_success_cap_formula():
    d = 2
    frac = default_c_quality(d) / d**2
    assert frac == pytest.approx(1 / (4 * 16))
    assert success_cap(1000, d) == math.ceil(math.log(1000 / 8) / -math.log(1 - frac))
    assert success_cap(8, d) == 0
    assert default_stop_size(2) == 8 and default_stop_size(9) == 11


def test_small_input_evaluates_every_point():
    P = np.arange(5.0).reshape(-1, 1)
    res = lower_bound_min(P, Quadratic([2.2]), seed=0)
    assert res.oracle_calls == 5 and res.successful_iterations == 0
    assert res.point[0] == 2.0


def test_impossible_success_threshold_exhausts_budget():
    P = np.arange(9.0).reshape(-1, 1)
    with pytest.raises(IterationBudgetExceeded) as info:
        lower_bound_min(P, Linear([1.0]), c_quality=0.99, seed=0)
    partial = info.value.partial
    assert partial is not None and partial.final_residual == 9
    assert partial.value == min(v for _, v in partial.evaluated_centers)


def test_c_quality_domain():
    with pytest.raises(DomainError):
        lower_bound_min(np.zeros((20, 2)), Linear([1.0, 0.0]), c_quality=4.0)
