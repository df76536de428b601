import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from radonurn.depth import tukey_depth_exact
from radonurn.errors import DimensionMismatch, DomainError
from radonurn.geometry import (
    Halfspace,
    as_points,
    halfspace_count,
    load_points,
    points_from_csv,
    points_from_json,
    points_to_csv,
    points_to_json,
    radon_point,
    save_points,
)


def barycentric(S, x):
    """Affine weights of ``x`` in terms of the rows of ``S`` (independent of the Radon code)."""
    A = np.vstack([S.T, np.ones(S.shape[0])])
    w, *_ = np.linalg.lstsq(A, np.append(x, 1.0), rcond=None)
    return w, float(np.max(np.abs(S.T @ w - x)))


def check_partition(pts, part):
    scale = 1.0 + np.max(np.abs(pts))
    assert part.part1 and part.part2
    assert sorted(part.part1 + part.part2) == list(range(len(pts)))
    for idx, coeffs in ((part.part1, part.coeffs1), (part.part2, part.coeffs2)):
        assert np.all(coeffs >= 0.0)
        assert abs(coeffs.sum() - 1.0) < 1e-12
        assert np.max(np.abs(coeffs @ pts[list(idx)] - part.point)) <= 1e-8 * scale
        w, resid = barycentric(pts[list(idx)], part.point)
        assert w.min() >= -1e-9
        assert resid <= 1e-8 * scale


# --- radon_point -------------------------------------------------------------

def test_radon_unit_square_diagonals():
    pts = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    part = radon_point(pts)
    np.testing.assert_allclose(part.point, [0.5, 0.5], atol=1e-15)
    assert {frozenset(part.part1), frozenset(part.part2)} == {frozenset({0, 2}), frozenset({1, 3})}
    check_partition(pts, part)


def test_radon_point_inside_triangle():
    pts = np.array([(0, 0), (4, 0), (0, 4), (1, 1)], dtype=float)
    part = radon_point(pts)
    np.testing.assert_allclose(part.point, [1.0, 1.0], atol=1e-12)
    parts = {frozenset(part.part1), frozenset(part.part2)}
    assert parts == {frozenset({3}), frozenset({0, 1, 2})}


def test_radon_random_quadruples_against_barycentric_oracle():
    rng = np.random.default_rng(10)
    for _ in range(10):
        pts = rng.standard_normal((4, 2))
        check_partition(pts, radon_point(pts))


def test_radon_one_dimension_is_median_of_three():
    part = radon_point([[5.0], [-1.0], [2.0]])
    assert part.point[0] == pytest.approx(2.0)


def test_radon_wrong_count():
    with pytest.raises(DimensionMismatch):
        radon_point(np.zeros((3, 2)))


def test_radon_rejects_nonfinite():
    pts = np.array([(0, 0), (1, 0), (1, np.nan), (0, 1)], dtype=float)
    with pytest.raises(DomainError):
        radon_point(pts)


def test_radon_repeated_points_still_valid():
    pts = np.array([(1, 1), (1, 1), (3, 0), (0, 2)], dtype=float)
    part = radon_point(pts)
    check_partition(pts, part)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=1, max_value=6).flatmap(
        lambda d: arrays(np.float64, (d + 2, d), elements=st.floats(-1e3, 1e3, allow_nan=False, width=64))
    )
)
def test_radon_membership_property(pts):
    # skip numerically degenerate configurations (rank-deficient lifted matrix)
    A = np.vstack([pts.T, np.ones(pts.shape[0])])
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] < 1e-6 * max(sv[0], 1.0):
        return
    check_partition(pts, radon_point(pts))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=2**32 - 1))
def test_radon_permutation_invariance(d, seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((d + 2, d))
    perm = rng.permutation(d + 2)
    a = radon_point(pts).point
    b = radon_point(pts[perm]).point
    assert np.max(np.abs(a - b)) <= 1e-9 * (1 + np.max(np.abs(pts)))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_radon_point_has_depth_two(seed):
    rng = np.random.default_rng(seed)
    for d in (2, 3):
        pts = rng.standard_normal((d + 2, d))
        r = radon_point(pts).point
        assert tukey_depth_exact(pts, r, coincide_tol=1e-12).depth >= 2


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=2**32 - 1))
def test_radon_point_outside_single_point_halfspaces(d, seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((d + 2, d))
    r = radon_point(pts).point
    for _ in range(8):
        u = rng.standard_normal(d)
        proj = np.sort(pts @ u)
        h = Halfspace(u, 0.5 * (proj[-1] + proj[-2]))
        assert halfspace_count(pts, h) == 1
        assert not h.contains(r)


# --- halfspaces --------------------------------------------------------------

def test_halfspace_count_examples():
    assert halfspace_count([[0.0], [1.0], [2.0]], Halfspace([1.0], 1.0)) == 2
    assert halfspace_count([[0.0, 0.0]], Halfspace([1.0, 0.0], 1.0)) == 0


def test_halfspace_count_matches_naive_loop():
    rng = np.random.default_rng(3)
    P = rng.integers(-3, 4, size=(500, 3)).astype(float)  # many exact ties
    for _ in range(20):
        h = Halfspace(rng.integers(-2, 3, size=3) + 0.0 + (rng.random(3) < 0.1), float(rng.integers(-2, 3)))
        naive = sum(1 for p in P if sum(a * b for a, b in zip(h.normal, p)) >= h.offset)
        assert halfspace_count(P, h) == naive


def test_halfspace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        halfspace_count(np.zeros((2, 3)), Halfspace([1.0, 0.0], 0.0))


def test_halfspace_needs_nonzero_normal():
    with pytest.raises(DomainError):
        Halfspace([0.0, 0.0], 1.0)


def test_halfspace_through_point():
    h = Halfspace.through([1.0, 2.0], [0.0, 1.0])
    assert h.offset == 2.0
    assert h.contains(np.array([[5.0, 2.0]]))[0]
    assert h.strictly_outside(np.array([[5.0, 1.999]]))[0]


# --- point sets and I/O ------------------------------------------------------

def test_as_points_shapes():
    assert as_points([1.0, 2.0, 3.0]).shape == (3, 1)
    with pytest.raises(DimensionMismatch):
        as_points([[1.0, 2.0]], dim=3)
    with pytest.raises(DomainError):
        as_points(np.zeros((0, 2)))


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 5)),
              elements=st.floats(allow_nan=False, allow_infinity=False, width=64)))
def test_csv_and_json_round_trip_exactly(X):
    assert np.array_equal(points_from_csv(points_to_csv(X)), X)
    assert np.array_equal(points_from_json(points_to_json(X)), X)


def test_csv_header_is_optional():
    a = points_from_csv("x,y\n1,2\n3,4\n")
    b = points_from_csv("1,2\n3,4\n")
    assert np.array_equal(a, b)


def test_csv_ragged_rows_rejected():
    with pytest.raises(DimensionMismatch):
        points_from_csv("1,2\n3\n")


def test_save_and_load(tmp_path):
    X = np.random.default_rng(0).standard_normal((7, 3))
    for name in ("p.csv", "p.json"):
        save_points(tmp_path / name, X)
        assert np.array_equal(load_points(tmp_path / name), X)
    assert json.loads((tmp_path / "p.json").read_text()) == X.tolist()
