"""Shared test fixtures that are plain functions rather than pytest fixtures."""
import math

import numpy as np

from radonurn.bodies import ConvexPolygon


def heavy_polygons(P, eps, count, rng):
    """Convex hulls of random local clusters holding at least ``eps n`` points."""
    n = P.shape[0]
    out = []
    while len(out) < count:
        c = rng.random(2)
        k = int(rng.integers(math.ceil(eps * n), math.ceil(2 * eps * n)))
        if rng.random() < 0.5:
            key = np.sum((P - c) ** 2, axis=1)
        else:
            u = rng.standard_normal(2)
            u /= np.linalg.norm(u)
            w = np.array([-u[1], u[0]])
            key = np.abs((P - c) @ u) + rng.uniform(0.05, 0.5) * np.abs((P - c) @ w)
        body = ConvexPolygon(P[np.argsort(key)[:k]])
        if body.count(P) >= eps * n:
            out.append(body)
    return out
