"""Tukey (halfspace) depth: exact for d <= 3, sampled directions otherwise."""
from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from ._rng import make_rng
from .errors import DomainError, SizeGuard, UnsupportedDimension
from .geometry import Halfspace, as_point, as_points

EXACT_LIMITS = {1: None, 2: 2000, 3: 300}
MERGE_TOL = 1e-10
PERTURB = 1e-7


@dataclass(frozen=True)
class DepthResult:
    depth: int
    witness: Halfspace
    method: str  # "exact" or "sampled-lower-bound"

    def to_dict(self):
        return {"depth": self.depth, "method": self.method, "witness": self.witness.to_dict()}


def _prepare(P, q):
    X = as_points(P)
    return X, as_point(q, X.shape[1])


def _depth_1d(x, q):
    below = int(np.count_nonzero(x <= q))
    above = int(np.count_nonzero(x >= q))
    if below <= above:
        return below, Halfspace([-1.0], -q)
    return above, Halfspace([1.0], q)


def _depth_3d(X, q):
    V = X - q
    on_q = np.all(V == 0.0, axis=1)
    z = int(np.count_nonzero(on_q))
    V = V[~on_q]
    m = V.shape[0]
    if m == 0:
        return z, np.array([1.0, 0.0, 0.0])
    norms = np.linalg.norm(V, axis=1)
    U = V / norms[:, None]
    cands = [np.eye(3), -np.eye(3)]
    if m >= 2:
        i, j = np.triu_indices(m, k=1)
        W = np.cross(U[i], U[j])
        wn = np.linalg.norm(W, axis=1)
        keep = wn > 1e-12
        i, j, W = i[keep], j[keep], W[keep] / wn[keep, None]
        if W.shape[0]:
            # tangent directions e with sign(<e, u_i>), sign(<e, u_j>) prescribed
            ui, uj = U[i], U[j]
            g = np.einsum("ij,ij->i", ui, uj)
            det = 1.0 - g * g
            for si in (1.0, -1.0):
                for sj in (1.0, -1.0):
                    a = (si - g * sj) / det
                    b = (sj - g * si) / det
                    E = a[:, None] * ui + b[:, None] * uj
                    E /= np.linalg.norm(E, axis=1)[:, None]
                    for sw in (1.0, -1.0):
                        cands.append(sw * W + PERTURB * E)
            # the unperturbed normals +-W are never better and would read
            # on-plane points at rounding noise, so they are left out
    else:
        cands.append(U)
        cands.append(-U)
    # a single ray's orthogonal complement: cover it with perturbed normals
    cands.append(U + PERTURB)
    cands.append(-U + PERTURB)
    D = np.vstack(cands)
    best = m + 1
    best_u = D[0]
    for start in range(0, D.shape[0], 4096):
        block = D[start:start + 4096]
        counts = np.count_nonzero(V @ block.T >= 0.0, axis=0)
        k = int(np.argmin(counts))
        if counts[k] < best:
            best = int(counts[k])
            best_u = block[k]
    return best + z, best_u / np.linalg.norm(best_u)


def tukey_depth_exact(P, q, coincide_tol=0.0):
    """Exact Tukey depth of ``q`` with respect to ``P`` for d in {1, 2, 3}.

    The depth is the minimum number of points in a closed halfspace whose
    boundary passes through ``q``. d = 2 uses an angular sweep evaluated on
    every arc between critical directions; d = 3 enumerates planes through
    ``q`` and point pairs and nudges their normals into each adjacent cell.

    Points within ``coincide_tol * (1 + max |P|)`` of ``q`` (max norm) are
    treated as equal to ``q``, so they lie in every halfspace. The default
    0 compares exactly.
    """
    X, q = _prepare(P, q)
    if coincide_tol > 0.0:
        near = np.max(np.abs(X - q), axis=1) <= coincide_tol * (1.0 + np.max(np.abs(X)))
        if np.any(near):
            X = X.copy()
            X[near] = q
    n, d = X.shape
    if d > 3:
        raise UnsupportedDimension(f"exact depth supports d <= 3, got d = {d}; use tukey_depth_sampled")
    cap = EXACT_LIMITS[d]
    if cap is not None and n > cap:
        raise SizeGuard(f"exact depth in d = {d} is capped at n = {cap}, got {n}")
    if d == 1:
        depth, witness = _depth_1d(X[:, 0], q[0])
        return DepthResult(depth, witness, "exact")
    if d == 2:
        depth, ux, uy = _kernels.depth2d(X[:, 0].copy(), X[:, 1].copy(), q[0], q[1], MERGE_TOL, -1)
        u = np.array([ux, uy])
    else:
        depth, u = _depth_3d(X, q)
    return DepthResult(int(depth), Halfspace.through(q, u), "exact")


def tukey_depth_sampled(P, q, directions=10_000, seed=0):
    """Minimum closed count over random unit directions: an upper bound on depth."""
    X, q = _prepare(P, q)
    if directions < 1:
        raise DomainError("directions must be >= 1")
    rng = make_rng(seed)
    d = X.shape[1]
    V = X - q
    best = X.shape[0] + 1
    best_u = None
    remaining = int(directions)
    block = max(1, min(remaining, 2_000_000 // max(X.shape[0], 1)))
    while remaining > 0:
        k = min(block, remaining)
        U = rng.standard_normal((k, d))
        U /= np.linalg.norm(U, axis=1)[:, None]
        counts = np.count_nonzero(V @ U.T >= 0.0, axis=0)
        i = int(np.argmin(counts))
        if counts[i] < best:
            best = int(counts[i])
            best_u = U[i]
        remaining -= k
    return DepthResult(best, Halfspace.through(q, best_u), "sampled-lower-bound")


def tukey_depth(P, q, directions=10_000, seed=0):
    """Exact depth when supported for this (n, d), sampled otherwise."""
    X, q = _prepare(P, q)
    n, d = X.shape
    cap = EXACT_LIMITS.get(d, 0)
    if d <= 3 and (cap is None or n <= cap):
        return tukey_depth_exact(X, q)
    return tukey_depth_sampled(X, q, directions, seed)


def is_alpha_centerpoint(P, q, alpha, directions=10_000, seed=0):
    """Whether every closed halfspace containing ``q`` holds at least ``alpha * n`` points.

    Exact for d <= 3 within the size caps. Otherwise sampled directions are
    used, which can only over-estimate depth, so a ``True`` there is not a
    certificate.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError("alpha must lie in (0, 1]")
    X = as_points(P)
    res = tukey_depth(X, q, directions, seed)
    return res.depth >= alpha * X.shape[0]


def depth_1d_rank(x, q):
    """1-D depth as ``min(#{x <= q}, #{x >= q})``."""
    x = np.asarray(x, dtype=np.float64).ravel()
    return int(min(np.count_nonzero(x <= q), np.count_nonzero(x >= q)))


def max_depth_lower_bound(n, d):
    """Depth guaranteed to exist by the centerpoint theorem: ``ceil(n / (d + 1))``."""
    return math.ceil(n / (d + 1))
