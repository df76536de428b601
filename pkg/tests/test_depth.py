import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radonurn.depth import (
    depth_1d_rank,
    is_alpha_centerpoint,
    tukey_depth,
    tukey_depth_exact,
    tukey_depth_sampled,
)
from radonurn.errors import DimensionMismatch, SizeGuard, UnsupportedDimension
from radonurn.geometry import halfspace_count


def dense_direction_depth(P, q, k=100_000):
    """Closed-halfplane depth minimised over ``k`` evenly spaced directions (d = 2)."""
    a = np.linspace(0.0, 2 * np.pi, k, endpoint=False)
    U = np.stack([np.cos(a), np.sin(a)], axis=1)
    return int(np.min(np.count_nonzero((P - q) @ U.T >= 0.0, axis=0)))


def regular_polygon(m, r=1.0, phase=0.0):
    a = phase + 2 * np.pi * np.arange(m) / m
    return r * np.stack([np.cos(a), np.sin(a)], axis=1)


# --- examples ------------------------------------------------------------------

def test_triangle_centroid_has_depth_one():
    P = np.array([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]])
    assert tukey_depth_exact(P, P.mean(axis=0)).depth == 1


def test_outside_point_has_depth_zero():
    P = np.random.default_rng(1).random((50, 2))
    assert tukey_depth_exact(P, [2.0, 2.0]).depth == 0
    assert tukey_depth_sampled(P, [2.0, 2.0], 10_000, seed=3).depth == 0


def test_regular_12gon_center_matches_dense_directions():
    P = regular_polygon(12, phase=0.1)
    exact = tukey_depth_exact(P, [0.0, 0.0]).depth
    assert exact == dense_direction_depth(P, np.zeros(2)) == 6


def test_identical_points_at_query():
    P = np.tile([[0.3, -0.2]], (9, 1))
    assert tukey_depth_exact(P, [0.3, -0.2]).depth == 9
    assert tukey_depth_sampled(P, [0.3, -0.2], 100, seed=0).depth == 9
    P3 = np.tile([[1.0, 2.0, 3.0]], (5, 1))
    assert tukey_depth_exact(P3, [1.0, 2.0, 3.0]).depth == 5


def test_sampled_equals_exact_in_most_trials():
    rng = np.random.default_rng(42)
    agree = 0
    for trial in range(100):
        P = rng.standard_normal((30, 2))
        q = 0.5 * rng.standard_normal(2)
        exact = tukey_depth_exact(P, q).depth
        sampled = tukey_depth_sampled(P, q, 100_000, seed=trial).depth
        assert sampled >= exact
        agree += sampled == exact
    assert agree >= 99


def test_median_of_nine_is_half_centerpoint():
    P = np.arange(9.0)
    assert tukey_depth_exact(P, [4.0]).depth == 5
    assert is_alpha_centerpoint(P, [4.0], 0.5)


def test_outside_point_is_not_a_centerpoint():
    P = np.random.default_rng(2).random((40, 2))
    assert not is_alpha_centerpoint(P, [-1.0, 0.5], 0.01)


def test_is_alpha_centerpoint_matches_dense_definition():
    rng = np.random.default_rng(5)
    for _ in range(30):
        P = rng.random((25, 2))
        q = rng.random(2)
        alpha = rng.uniform(0.01, 0.5)
        assert is_alpha_centerpoint(P, q, alpha) == (dense_direction_depth(P, q) >= alpha * 25)


def test_one_dimensional_rank_depth():
    x = np.array([3.0, 1.0, 2.0, 2.0, 5.0])
    for q in (0.0, 1.0, 2.0, 2.5, 5.0):
        assert tukey_depth_exact(x, [q]).depth == depth_1d_rank(x, q)


# --- errors ----------------------------------------------------------------------

def test_exact_depth_rejects_high_dimension():
    with pytest.raises(UnsupportedDimension):
        tukey_depth_exact(np.zeros((5, 4)), np.zeros(4))


def test_exact_depth_size_caps():
    with pytest.raises(SizeGuard):
        tukey_depth_exact(np.zeros((2001, 2)), np.zeros(2))
    with pytest.raises(SizeGuard):
        tukey_depth_exact(np.zeros((301, 3)), np.zeros(3))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        tukey_depth_exact(np.zeros((5, 2)), np.zeros(3))


def test_auto_method_falls_back_to_sampling():
    P = np.random.default_rng(0).standard_normal((50, 5))
    res = tukey_depth(P, np.zeros(5), directions=2000, seed=1)
    assert res.method == "sampled-lower-bound"
    assert tukey_depth(P[:, :2], np.zeros(2)).method == "exact"


# --- properties ------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(st.integers(2, 3), st.integers(1, 40), st.integers(0, 2**32 - 1), st.booleans())
def test_sampled_never_below_exact_and_witness_is_tight(d, n, seed, lattice):
    rng = np.random.default_rng(seed)
    P = rng.integers(-3, 4, size=(n, d)).astype(float) if lattice else rng.standard_normal((n, d))
    q = rng.integers(-2, 3, size=d).astype(float) if lattice else 0.7 * rng.standard_normal(d)
    res = tukey_depth_exact(P, q)
    assert 0 <= res.depth <= n
    assert tukey_depth_sampled(P, q, 500, seed=seed).depth >= res.depth
    if not lattice:
        assert halfspace_count(P, res.witness) == res.depth
        assert abs(res.witness.normal @ q - res.witness.offset) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3), st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_duplicating_a_point_never_decreases_depth(d, n, seed):
    rng = np.random.default_rng(seed)
    P = rng.integers(-3, 4, size=(n, d)).astype(float)
    q = rng.integers(-2, 3, size=d).astype(float)
    k = int(rng.integers(0, n))
    assert tukey_depth_exact(np.vstack([P, P[k]]), q).depth >= tukey_depth_exact(P, q).depth


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 25), st.integers(0, 2**32 - 1))
def test_planar_exact_matches_dense_directions_on_generic_data(n, seed):
    rng = np.random.default_rng(seed)
    P = rng.random((n, 2))
    q = rng.random(2)
    exact = tukey_depth_exact(P, q).depth
    dense = dense_direction_depth(P, q, 200_000)
    assert exact <= dense
    # critical arcs can be narrower than the grid spacing, so only ask for closeness
    assert dense - exact <= 1


def test_three_dimensional_exact_on_cube_vertices():
    P = np.array([[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)], dtype=float)
    # every closed halfspace through the centre holds at least 4 vertices
    assert tukey_depth_exact(P, [0.5, 0.5, 0.5]).depth == 4
    assert tukey_depth_exact(P, [0.0, 0.0, 0.0]).depth == 1


def test_three_dimensional_exact_below_sampled_upper_bound():
    rng = np.random.default_rng(9)
    for _ in range(10):
        P = rng.standard_normal((40, 3))
        q = 0.3 * rng.standard_normal(3)
        exact = tukey_depth_exact(P, q).depth
        sampled = tukey_depth_sampled(P, q, 200_000, seed=1).depth
        assert exact <= sampled <= exact + 2


def test_centerpoint_theorem_depth_exists_on_small_sets():
    # some point of a fine grid reaches the guaranteed depth ceil(n/3)
    rng = np.random.default_rng(4)
    P = rng.random((21, 2))
    g = np.linspace(0, 1, 41)
    best = max(tukey_depth_exact(P, [x, y]).depth for x in g for y in g)
    assert best >= math.ceil(21 / 3)
