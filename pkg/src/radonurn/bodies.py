"""Convex bodies with exact membership tests and separation oracles.

A separation oracle is any callable ``q -> Halfspace | None``: ``None``
means ``q`` lies in the body, otherwise the returned closed halfspace
contains the whole body and excludes ``q``.
"""
import json

import numpy as np
from scipy.spatial import ConvexHull

from . import _kernels
from .errors import DomainError
from .geometry import Halfspace, as_points


class Body:
    dim: int

    def contains(self, X):
        raise NotImplementedError

    def separate(self, q):
        raise NotImplementedError

    def __call__(self, q):
        return self.separate(q)

    def count(self, P):
        return int(np.count_nonzero(self.contains(as_points(P, self.dim))))


class Ball(Body):
    def __init__(self, center, radius):
        self.center = np.asarray(center, dtype=np.float64)
        self.radius = float(radius)
        self.dim = self.center.shape[0]
        if self.radius < 0:
            raise DomainError("radius must be non-negative")

    def contains(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return np.sum((X - self.center) ** 2, axis=1) <= self.radius**2

    def separate(self, q):
        q = np.asarray(q, dtype=np.float64)
        r = q - self.center
        dist = np.linalg.norm(r)
        if dist**2 <= self.radius**2:
            return None
        u = r / dist
        return Halfspace(-u, -(u @ self.center + self.radius))


class Slab(Body):
    """``{x : lo <= <a, x> <= hi}``."""

    def __init__(self, normal, lo, hi):
        self.normal = np.asarray(normal, dtype=np.float64)
        self.lo, self.hi = float(lo), float(hi)
        self.dim = self.normal.shape[0]
        if self.lo > self.hi:
            raise DomainError("slab needs lo <= hi")

    def contains(self, X):
        s = np.atleast_2d(np.asarray(X, dtype=np.float64)) @ self.normal
        return (s >= self.lo) & (s <= self.hi)

    def separate(self, q):
        s = float(np.asarray(q, dtype=np.float64) @ self.normal)
        if s > self.hi:
            return Halfspace(-self.normal, -self.hi)
        if s < self.lo:
            return Halfspace(self.normal, self.lo)
        return None


class Polytope(Body):
    """``{x : A x <= b}``."""

    def __init__(self, A, b):
        self.A = np.atleast_2d(np.asarray(A, dtype=np.float64))
        self.b = np.asarray(b, dtype=np.float64)
        self.dim = self.A.shape[1]

    @classmethod
    def hull(cls, points):
        """Convex hull of ``points`` (full-dimensional, d >= 2)."""
        X = as_points(points)
        hull = ConvexHull(X)
        eq = hull.equations
        return cls(eq[:, :-1], -eq[:, -1])

    def contains(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return np.all(X @ self.A.T <= self.b, axis=1)

    def separate(self, q):
        viol = self.A @ np.asarray(q, dtype=np.float64) - self.b
        k = int(np.argmax(viol))
        if viol[k] <= 0.0:
            return None
        return Halfspace(-self.A[k], -self.b[k])


class ConvexPolygon(Body):
    """Closed convex polygon given by counter-clockwise vertices (d = 2).

    Membership uses orientation tests against the vertices themselves, so
    the vertices and points on the edges between them count as inside.
    """

    def __init__(self, vertices):
        V = as_points(vertices, 2)
        hull = ConvexHull(V)
        self.vertices = V[hull.vertices]
        self.dim = 2

    def _cross(self, X):
        V = self.vertices
        W = np.roll(V, -1, axis=0)
        E = W - V
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return E[None, :, 0] * (X[:, None, 1] - V[None, :, 1]) - E[None, :, 1] * (X[:, None, 0] - V[None, :, 0])

    def contains(self, X):
        X = np.ascontiguousarray(np.atleast_2d(np.asarray(X, dtype=np.float64)))
        out = np.empty(X.shape[0], dtype=np.bool_)
        _kernels.in_convex_polygon(X, np.ascontiguousarray(self.vertices), out)
        return out

    def separate(self, q):
        cr = self._cross(q)[0]
        k = int(np.argmin(cr))
        if cr[k] >= 0.0:
            return None
        V = self.vertices
        e = np.roll(V, -1, axis=0)[k] - V[k]
        inward = np.array([-e[1], e[0]])
        return Halfspace(inward, inward @ V[k])


class Ellipsoid(Body):
    """``{x : (x - c)^T M (x - c) <= 1}`` for positive definite ``M``."""

    def __init__(self, center, M):
        self.center = np.asarray(center, dtype=np.float64)
        self.M = np.asarray(M, dtype=np.float64)
        self.dim = self.center.shape[0]

    def contains(self, X):
        R = np.atleast_2d(np.asarray(X, dtype=np.float64)) - self.center
        return np.einsum("ij,jk,ik->i", R, self.M, R) <= 1.0

    def separate(self, q):
        r = np.asarray(q, dtype=np.float64) - self.center
        rho2 = float(r @ self.M @ r)
        if rho2 <= 1.0:
            return None
        g = self.M @ r
        # support value of the ellipsoid in direction g is <g, c> + sqrt(rho2)
        return Halfspace(-g, -(g @ self.center + np.sqrt(rho2)))


class Nowhere(Body):
    """Empty body: every query is cut off by a halfspace missing all of ``[-bound, bound]^d``."""

    def __init__(self, dim, bound=1e9):
        self.dim = dim
        self.bound = float(bound)

    def contains(self, X):
        return np.zeros(np.atleast_2d(X).shape[0], dtype=bool)

    def separate(self, q):
        u = np.zeros(self.dim)
        u[0] = 1.0
        return Halfspace(u, self.bound * self.dim + 1.0)


def parse_body(spec):
    """Body from a compact string.

    ``ball:x,y,...,radius``, ``slab:a1,...,ad,lo,hi``,
    ``ellipsoid:file.json`` (``{"center": .., "M": ..}``),
    ``polytope:file.json`` (``{"A": .., "b": ..}`` or ``{"points": ..}``),
    ``polygon:file.json`` (``{"vertices": ..}``, d = 2).
    """
    kind, _, rest = spec.partition(":")
    if kind in ("ball", "slab"):
        try:
            vals = [float(v) for v in rest.split(",")]
        except ValueError:
            raise DomainError(f"bad body parameters in {spec!r}") from None
        if kind == "ball":
            if len(vals) < 2:
                raise DomainError("ball needs a center and a radius")
            return Ball(vals[:-1], vals[-1])
        if len(vals) < 3:
            raise DomainError("slab needs a normal, lo and hi")
        return Slab(vals[:-2], vals[-2], vals[-1])
    if kind in ("polytope", "ellipsoid", "polygon"):
        with open(rest) as fh:
            data = json.load(fh)
        if kind == "polygon":
            return ConvexPolygon(data["vertices"])
        if kind == "ellipsoid":
            return Ellipsoid(data["center"], data["M"])
        if "points" in data:
            return Polytope.hull(data["points"])
        return Polytope(data["A"], data["b"])
    raise DomainError(f"unknown body kind {kind!r}")
