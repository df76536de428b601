"""Weak eps-nets and center nets in the plane.

The universal centerpoint set of a sample ``N`` is the vertex set of the
arrangement of all lines through two points of ``N`` (plus ``N`` itself).
For every subset of ``N`` one of these vertices is a 1/3-centerpoint, so
the set is a weak eps-net when ``N`` is a good sample, and in fact a center
net. Its size grows like ``|N|^4``, so everything here is limited to small
samples in d = 2.
"""
from dataclasses import dataclass
from functools import lru_cache
import math
from typing import NamedTuple

import numpy as np

from . import _kernels
from ._rng import make_rng
from .depth import MERGE_TOL, tukey_depth_exact
from .errors import BoundViolation, DomainError, SizeGuard, UnsupportedDimension
from .geometry import as_points

MAX_SAMPLE = 64
PARALLEL_TOL = 1e-12
DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class UniversalCenterSet:
    source: np.ndarray
    candidates: np.ndarray
    d: int
    n: int


def candidate_bound(n):
    """``C(C(n, 2), 2) + n``, the most vertices the construction can produce."""
    return math.comb(math.comb(n, 2), 2) + n


def _scale(X):
    return max(1.0, float(np.max(np.abs(X))))


def _dedup(C, tol):
    # snap to a tol-grid and keep one point per cell, in lexicographic order
    keys = np.round(C / tol).astype(np.int64)
    order = np.lexsort((keys[:, 1], keys[:, 0]))
    k = keys[order]
    first = np.ones(k.shape[0], dtype=bool)
    first[1:] = np.any(k[1:] != k[:-1], axis=1)
    return C[order[first]]


def universal_centerpoints(N, max_n=MAX_SAMPLE):
    """Arrangement vertices of all lines through pairs of ``N`` (d = 2 only).

    Intersections of nearly parallel line pairs (``|det| <= 1e-12 scale^2``)
    are skipped; the input points are always included; the result is
    deduplicated on a ``1e-9 scale`` grid and sorted lexicographically.
    """
    X = as_points(N)
    n, d = X.shape
    if d != 2:
        raise UnsupportedDimension("universal centerpoint sets are built only for d = 2")
    if n > max_n:
        raise SizeGuard(f"universal centerpoint set capped at n = {max_n} (about n^4/8 vertices), got {n}")
    scale = _scale(X)
    i, j = np.triu_indices(n, k=1)
    dirs = X[j] - X[i]
    real = np.any(dirs != 0.0, axis=1)
    i, j, dirs = i[real], j[real], dirs[real]
    parts = [X]
    L = dirs.shape[0]
    if L >= 2:
        # line k: points X[i_k] + t dirs_k; intersect pairs (a, b) in blocks
        a_all, b_all = np.triu_indices(L, k=1)
        for start in range(0, a_all.shape[0], 1 << 20):
            a = a_all[start:start + (1 << 20)]
            b = b_all[start:start + (1 << 20)]
            da, db = dirs[a], dirs[b]
            det = da[:, 0] * db[:, 1] - da[:, 1] * db[:, 0]
            ok = np.abs(det) > PARALLEL_TOL * scale**2
            a, b, da, db, det = a[ok], b[ok], da[ok], db[ok], det[ok]
            w = X[i[b]] - X[i[a]]
            t = (w[:, 0] * db[:, 1] - w[:, 1] * db[:, 0]) / det
            parts.append(X[i[a]] + t[:, None] * da)
    C = _dedup(np.vstack(parts), DEDUP_TOL * scale)
    return UniversalCenterSet(source=X, candidates=C, d=2, n=n)


def deepest_candidate(N, candidates):
    """Index and depth (w.r.t. ``N``) of the first deepest candidate."""
    X = as_points(N, 2)
    C = as_points(candidates, 2)
    idx, depth = _kernels.argmax_depth2d(
        X[:, 0].copy(), X[:, 1].copy(), np.ascontiguousarray(C), MERGE_TOL, _kernels._PROBE
    )
    return int(idx), int(depth)


@lru_cache(maxsize=32)
def _deepest_cached(raw, n):
    X = np.frombuffer(raw, dtype=np.float64).reshape(n, 2)
    cands = universal_centerpoints(X).candidates
    k, depth = deepest_candidate(X, cands)
    return cands[k].copy(), depth


def exact_centerpoint(N):
    """Deepest universal candidate of ``N`` and its depth (a 1/3-centerpoint).

    Cached on the bytes of ``N``: repeated searches over one sample share
    their first round.
    """
    X = np.ascontiguousarray(as_points(N, 2))
    q, depth = _deepest_cached(X.tobytes(), X.shape[0])
    return q.copy(), depth


@dataclass(frozen=True)
class CenterNetParams:
    d: int
    eps: float
    phi: float
    tau: int
    beta: float
    sample_size: int
    log_base: str = "e"

    @classmethod
    def create(cls, d, eps, phi, c_s=1.0, log_base="e"):
        if eps <= 0.0 or not 0.0 < phi < 1.0:
            raise DomainError("need eps > 0 and phi in (0, 1)")
        log = math.log if log_base == "e" else math.log2
        tau = math.ceil(1 + 3 * (d + 1) + (d + 1) * log(1.0 / eps))
        return cls(
            d=d,
            eps=eps,
            phi=phi,
            tau=tau,
            beta=1.0 / (4.0 * tau),
            sample_size=weak_net_sample_size(d, eps, phi, c_s),
            log_base=log_base,
        )


def weak_net_sample_size(d, eps, phi, c_s=1.0):
    """``c_s eps^-1 (d^2 ln d ln^3(1/eps) + ln(1/phi))``; ``ln(1/eps)`` clamps at 0 for eps >= 1."""
    L = max(0.0, math.log(1.0 / eps))
    return max(1, math.ceil(c_s * (d**2 * math.log(d) * L**3 + math.log(1.0 / phi)) / eps))


def eps_floor(d, phi, c_s=1.0, cap=MAX_SAMPLE):
    """Smallest eps (to 1e-4) whose sample size fits under ``cap``."""
    lo, hi = 1e-6, 1.0
    if weak_net_sample_size(d, hi, phi, c_s) > cap:
        return math.inf
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if weak_net_sample_size(d, mid, phi, c_s) <= cap:
            hi = mid
        else:
            lo = mid
    return math.ceil(hi * 1e4) / 1e4


def draw_weak_net_sample(P, eps, phi, seed, c_s=1.0):
    X = as_points(P)
    if X.shape[1] != 2:
        raise UnsupportedDimension("weak nets are built only for d = 2")
    s = weak_net_sample_size(2, eps, phi, c_s)
    if s > MAX_SAMPLE:
        raise SizeGuard(
            f"sample size {s} exceeds the cap {MAX_SAMPLE}; need eps >= {eps_floor(2, phi, c_s)} "
            f"at phi = {phi}, c_s = {c_s}"
        )
    rng = make_rng(seed)
    return X[rng.integers(0, X.shape[0], size=s)]


def build_weak_eps_net(P, eps, phi, seed, c_s=1.0):
    """Weak eps-net of ``P``: the universal centerpoint set of a small random sample."""
    return universal_centerpoints(draw_weak_net_sample(P, eps, phi, seed, c_s)).candidates


class CenterNetResult(NamedTuple):
    point: np.ndarray
    iterations: int


def verify_center_net(N, P, C_members, eps, log_base="e"):
    """Find a net point that is a ``beta``-centerpoint of ``C_members``.

    Replays the center-net argument for one heavy body: take the deepest
    candidate ``q`` of the active sample; if it is a ``2 beta``-centerpoint
    of the residual points, return it, else strip the minimising closed
    halfspace through ``q`` from both sets and repeat. More than ``tau``
    rounds raises :class:`BoundViolation`.
    """
    N = as_points(N, 2)
    P = as_points(P, 2)
    Cm = as_points(C_members, 2)
    if Cm.shape[0] < eps * P.shape[0]:
        raise DomainError(f"body holds {Cm.shape[0]} < eps * n = {eps * P.shape[0]} points")
    params = CenterNetParams.create(2, eps, 0.5, log_base=log_base)
    active, residual = N, Cm
    for it in range(1, params.tau + 1):
        if active.shape[0] == 0 or residual.shape[0] == 0:
            break
        q, _ = exact_centerpoint(active)
        res = tukey_depth_exact(residual, q)
        if res.depth >= 2.0 * params.beta * residual.shape[0]:
            return CenterNetResult(q, it)
        h = res.witness
        active = active[~h.contains(active)]
        residual = residual[~h.contains(residual)]
    raise BoundViolation(f"no 2*beta-centerpoint found within tau = {params.tau} rounds")
