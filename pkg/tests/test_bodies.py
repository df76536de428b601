import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radonurn.bodies import Ball, ConvexPolygon, Ellipsoid, Nowhere, Polytope, Slab, parse_body
from radonurn.datasets import DISTRIBUTIONS, generate
from radonurn.errors import DomainError


def random_body(kind, rng):
    if kind == "ball":
        return Ball(rng.random(2), rng.uniform(0.05, 0.6))
    if kind == "slab":
        lo = rng.uniform(-0.5, 0.5)
        return Slab(rng.standard_normal(2), lo, lo + rng.uniform(0.0, 0.5))
    if kind == "polytope":
        return Polytope.hull(rng.random((8, 2)))
    if kind == "polygon":
        return ConvexPolygon(rng.random((8, 2)))
    L = rng.standard_normal((2, 2))
    return Ellipsoid(rng.random(2), L @ L.T + 0.5 * np.eye(2))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["ball", "slab", "polytope", "polygon", "ellipsoid"]), st.integers(0, 2**32 - 1))
def test_separation_contract(kind, seed):
    rng = np.random.default_rng(seed)
    body = random_body(kind, rng)
    X = 3 * rng.random((4000, 2)) - 1
    members = X[body.contains(X)]
    for q in 3 * rng.random((20, 2)) - 1:
        h = body.separate(q)
        if h is None:
            assert body.contains(q)[0]
            continue
        assert not body.contains(q)[0]
        assert float(h.normal @ q) < h.offset
        slack = 1e-9 * (1 + np.abs(h.offset))
        assert np.all(members @ h.normal >= h.offset - slack)


def test_nowhere_cuts_off_everything():
    body = Nowhere(3)
    h = body.separate(np.zeros(3))
    assert h.normal @ np.zeros(3) < h.offset
    assert body.count(np.random.default_rng(0).random((100, 3))) == 0


def test_polygon_membership_includes_boundary():
    sq = ConvexPolygon([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]])
    assert sq.vertices.shape[0] == 4
    pts = np.array([[0.0, 0.0], [0.5, 0.0], [1.0, 0.3], [0.5, 0.5], [1.0001, 0.5], [-1e-12, 0.2]])
    assert sq.contains(pts).tolist() == [True, True, True, True, False, False]


def test_parse_body(tmp_path):
    b = parse_body("ball:1,2,0.5")
    assert isinstance(b, Ball) and b.radius == 0.5 and b.dim == 2
    s = parse_body("slab:0,1,0.2,0.4")
    assert isinstance(s, Slab) and (s.lo, s.hi) == (0.2, 0.4)
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"A": [[1.0, 0.0], [0.0, 1.0]], "b": [1.0, 1.0]}))
    assert isinstance(parse_body(f"polytope:{f}"), Polytope)
    f.write_text(json.dumps({"points": [[0, 0], [1, 0], [0, 1]]}))
    assert parse_body(f"polytope:{f}").contains([[0.2, 0.2]])[0]
    f.write_text(json.dumps({"center": [0, 0], "M": [[1, 0], [0, 4]]}))
    assert parse_body(f"ellipsoid:{f}").contains([[0.9, 0.0]])[0]
    f.write_text(json.dumps({"vertices": [[0, 0], [2, 0], [0, 2]]}))
    assert parse_body(f"polygon:{f}").count([[0.5, 0.5], [2, 2]]) == 1
    for bad in ("cube:1,2", "ball:1", "slab:1,2", "ball:a,b", "slab:1,0.5,0.2"):
        with pytest.raises(DomainError):
            parse_body(bad)


# --- datasets ---------------------------------------------------------------------

@pytest.mark.parametrize("dist", sorted(DISTRIBUTIONS))
@pytest.mark.parametrize("d", [1, 2, 5])
def test_generate_shape_and_determinism(dist, d):
    a = generate(dist, 300, d, seed=4)
    assert a.shape == (300, d) and np.all(np.isfinite(a))
    assert np.array_equal(a, generate(dist, 300, d, seed=4))
    assert not np.array_equal(a, generate(dist, 300, d, seed=5))


def test_distribution_geometry():
    assert np.allclose(np.linalg.norm(generate("circle", 500, 3, seed=1), axis=1), 1.0)
    assert np.all(np.linalg.norm(generate("ball", 500, 4, seed=1), axis=1) <= 1.0)
    U = generate("uniform-square", 500, 2, seed=1)
    assert U.min() >= 0.0 and U.max() < 1.0
    assert set(np.unique(generate("circle", 50, 1, seed=2))) <= {-1.0, 1.0}


def test_generate_rejects_bad_input():
    with pytest.raises(DomainError):
        generate("torus", 10, 2, seed=0)
    with pytest.raises(DomainError):
        generate("ball", 0, 2, seed=0)
