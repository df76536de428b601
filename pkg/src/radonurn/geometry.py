"""Point sets, closed halfspaces and Radon points."""
import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateInput, DimensionMismatch, DomainError

ABS_TOL = 1e-12


def as_points(P, dim=None):
    """Validate a point set and return it as a float64 ``(n, d)`` array.

    A 1-D input is read as ``n`` points on the line. Duplicates are allowed.
    """
    X = np.asarray(P, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise DomainError(f"expected a non-empty (n, d) point array, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DomainError("point coordinates must be finite")
    if dim is not None and X.shape[1] != dim:
        raise DimensionMismatch(f"points have dimension {X.shape[1]}, expected {dim}")
    return X


def as_point(q, dim=None):
    x = np.atleast_1d(np.asarray(q, dtype=np.float64))
    if x.ndim != 1:
        raise DomainError(f"expected a single point, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("point coordinates must be finite")
    if dim is not None and x.shape[0] != dim:
        raise DimensionMismatch(f"point has dimension {x.shape[0]}, expected {dim}")
    return x


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace ``{x : <normal, x> >= offset}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = np.atleast_1d(np.asarray(self.normal, dtype=np.float64))
        if not np.linalg.norm(normal) > 0:
            raise DomainError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self):
        return self.normal.shape[0]

    @classmethod
    def through(cls, point, normal):
        """Closed halfspace with inward ``normal`` whose boundary contains ``point``."""
        normal = np.asarray(normal, dtype=np.float64)
        return cls(normal, float(normal @ np.asarray(point, dtype=np.float64)))

    def contains(self, X):
        """Boolean mask of closed membership (ties count as inside)."""
        X = np.asarray(X, dtype=np.float64)
        return X @ self.normal >= self.offset

    def strictly_outside(self, X):
        return np.asarray(X, dtype=np.float64) @ self.normal < self.offset

    def to_dict(self):
        return {"normal": self.normal.tolist(), "offset": self.offset}


def halfspace_count(P, h):
    """Number of points of ``P`` in the closed halfspace ``h``."""
    X = as_points(P)
    if X.shape[1] != h.dim:
        raise DimensionMismatch(f"points have dimension {X.shape[1]}, halfspace {h.dim}")
    return int(np.count_nonzero(h.contains(X)))


@dataclass(frozen=True)
class RadonPartition:
    """Radon partition of ``d + 2`` points.

    ``part1``/``part2`` index the input, ``coeffs1``/``coeffs2`` are the
    matching convex weights and ``point`` lies in both convex hulls.
    """

    part1: tuple
    part2: tuple
    coeffs1: np.ndarray
    coeffs2: np.ndarray
    point: np.ndarray
    multipliers: np.ndarray

    def to_dict(self):
        return {
            "part1": list(self.part1),
            "part2": list(self.part2),
            "coeffs1": self.coeffs1.tolist(),
            "coeffs2": self.coeffs2.tolist(),
            "point": self.point.tolist(),
        }


def radon_point(pts, rel_tol=1e-12, zero_tol=1e-12):
    """Radon partition and Radon point of exactly ``d + 2`` points in R^d.

    Solves ``sum lam_i p_i = 0, sum lam_i = 0`` by elimination, then splits
    the indices by the sign of ``lam``. Indices with ``|lam_i|`` below
    ``zero_tol`` (relative to ``max |lam|``) join ``part1`` with weight 0.

    >>> radon_point([(0, 0), (1, 0), (1, 1), (0, 1)]).point
    array([0.5, 0.5])
    """
    X = as_points(pts)
    m, d = X.shape
    if m != d + 2:
        raise DimensionMismatch(f"need d + 2 = {d + 2} points in R^{d}, got {m}")
    A = np.vstack([X.T, np.ones((1, m))])
    lam = np.empty(m)
    pivcol = np.empty(d + 1, dtype=np.int64)
    _kernels.null_vector(A, lam, pivcol, rel_tol)
    out = np.empty(d)
    if not _kernels.radon_combine(X, lam, zero_tol, out):
        raise DegenerateInput("elimination produced no usable null vector")
    z = zero_tol * np.max(np.abs(lam))
    neg = lam < -z
    part1 = tuple(int(i) for i in np.flatnonzero(~neg))
    part2 = tuple(int(i) for i in np.flatnonzero(neg))
    w1 = np.where(lam[list(part1)] > z, lam[list(part1)], 0.0)
    w2 = -lam[list(part2)]
    return RadonPartition(part1, part2, w1 / w1.sum(), w2 / w2.sum(), out, lam)


# --- serialization -------------------------------------------------------

def points_to_csv(P):
    X = as_points(P)
    buf = io.StringIO()
    for row in X:
        buf.write(",".join(repr(float(v)) for v in row))
        buf.write("\n")
    return buf.getvalue()


def points_from_csv(text):
    """Parse one point per row; a non-numeric first row is taken as a header."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise DomainError("no points in CSV input")
    try:
        [float(c) for c in rows[0]]
    except ValueError:
        rows = rows[1:]
    try:
        data = [[float(c) for c in r] for r in rows]
    except ValueError as exc:
        raise DomainError(f"bad CSV point row: {exc}") from None
    if len({len(r) for r in data}) != 1:
        raise DimensionMismatch("CSV rows have differing numbers of columns")
    return as_points(data)


def points_to_json(P):
    return json.dumps(as_points(P).tolist())


def points_from_json(text):
    return as_points(json.loads(text))


def load_points(path):
    """Read a point set from ``path`` (``.json`` or CSV; ``-`` is stdin)."""
    if str(path) == "-":
        import sys

        text = sys.stdin.read()
        return points_from_json(text) if text.lstrip().startswith("[") else points_from_csv(text)
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return points_from_json(text)
    return points_from_csv(text)


def save_points(path, P):
    text = points_to_json(P) if str(path).endswith(".json") else points_to_csv(P)
    with open(path, "w") as fh:
        fh.write(text)
