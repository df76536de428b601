"""Certified lower bound on ``min_{p in P} f(p)`` from subgradient queries.

Each round finds an approximate centerpoint ``c`` of the surviving points,
asks the oracle for ``f(c)`` and a subgradient ``v``, and drops every point
with ``<v, x - c> > 0``; those all have ``f(x) > f(c)``.
"""
from dataclasses import dataclass, field
import math
from typing import Callable, Protocol
import warnings

import numpy as np

from ._rng import child_seed, make_rng
from .centerpoint import SampleSizeWarning, approx_centerpoint
from .errors import DomainError, IterationBudgetExceeded
from .geometry import as_points

ZERO_SUBGRADIENT = 1e-12


class SubgradientOracle(Protocol):
    def __call__(self, x: np.ndarray) -> tuple[float, np.ndarray]: ...


@dataclass
class LowerBoundResult:
    point: np.ndarray
    value: float
    evaluated_centers: list = field(default_factory=list)
    oracle_calls: int = 0
    successful_iterations: int = 0
    attempts: int = 0
    final_residual: int = 0
    stopped_on_zero_subgradient: bool = False

    def to_dict(self):
        return {
            "point": self.point.tolist(),
            "value": self.value,
            "oracle_calls": self.oracle_calls,
            "successful_iterations": self.successful_iterations,
            "attempts": self.attempts,
            "final_residual": self.final_residual,
            "stopped_on_zero_subgradient": self.stopped_on_zero_subgradient,
            "evaluated_centers": [[c.tolist(), v] for c, v in self.evaluated_centers],
        }


def default_stop_size(d):
    return max(d + 2, 8)


def default_c_quality(d):
    """``c`` such that the success threshold ``c/d^2`` equals ``1/(4 (d+2)^2)``."""
    return d**2 / (4.0 * (d + 2) ** 2)


def success_cap(n, d, c_quality=None, stop_size=None):
    """Most successful rounds possible: ``ceil(ln(n / stop) / -ln(1 - c/d^2))``."""
    c_quality = default_c_quality(d) if c_quality is None else c_quality
    stop_size = default_stop_size(d) if stop_size is None else stop_size
    if n <= stop_size:
        return 0
    frac = c_quality / d**2
    return math.ceil(math.log(n / stop_size) / -math.log1p(-frac))


def lower_bound_min(P, oracle: Callable, c_quality=None, seed=0, stop_size=None, eps_b=0.5):
    """Point ``q`` with ``f(q) <= min_{p in P} f(p)`` using O(d^2 log n) oracle calls.

    ``c_quality`` is the constant ``c`` of the success test: a round counts
    only if it discards at least ``c |P_i| / d^2`` points, otherwise it is
    retried with fresh randomness. The default makes the threshold
    ``|P_i| / (4 (d + 2)^2)``.
    """
    X = as_points(P)
    n, d = X.shape
    c_quality = default_c_quality(d) if c_quality is None else float(c_quality)
    if not 0.0 < c_quality / d**2 < 1.0:
        raise DomainError("c_quality / d^2 must lie in (0, 1)")
    stop_size = default_stop_size(d) if stop_size is None else int(stop_size)
    frac = c_quality / d**2
    rng = make_rng(seed)
    max_success = math.ceil(64 * d**2 * math.log(max(n, 2)))
    max_attempts = 16 * max_success

    res = LowerBoundResult(point=X[0].copy(), value=math.inf)
    alive = X
    best_point, best_value = None, math.inf

    def consider(x, value):
        nonlocal best_point, best_value
        if value < best_value:
            best_point, best_value = np.array(x, dtype=np.float64), float(value)

    while alive.shape[0] > stop_size:
        if res.successful_iterations >= max_success or res.attempts >= max_attempts:
            res.point, res.value, res.final_residual = best_point, best_value, alive.shape[0]
            raise IterationBudgetExceeded(
                f"no termination after {res.attempts} rounds ({res.successful_iterations} successful)",
                partial=res,
            )
        res.attempts += 1
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SampleSizeWarning)
            c = approx_centerpoint(alive, eps_b, 0.5, child_seed(rng)).point
        value, v = oracle(c)
        value = float(value)
        v = np.asarray(v, dtype=np.float64)
        res.oracle_calls += 1
        res.evaluated_centers.append((c, value))
        consider(c, value)
        if np.linalg.norm(v) <= ZERO_SUBGRADIENT:
            # c minimises f globally
            res.stopped_on_zero_subgradient = True
            res.point, res.value, res.final_residual = best_point, best_value, alive.shape[0]
            return res
        drop = (alive - c) @ v > 0.0
        if np.count_nonzero(drop) >= frac * alive.shape[0]:
            alive = alive[~drop]
            res.successful_iterations += 1

    for p in alive:
        value, _ = oracle(p)
        res.oracle_calls += 1
        consider(p, float(value))
    res.point, res.value, res.final_residual = best_point, best_value, alive.shape[0]
    return res


# --- a small zoo of convex functions with subgradients ----------------------

class Linear:
    """``f(x) = <a, x> + b``."""

    def __init__(self, a, b=0.0):
        self.a = np.asarray(a, dtype=np.float64)
        self.b = float(b)

    def __call__(self, x):
        return float(self.a @ x + self.b), self.a.copy()


class Quadratic:
    """``f(x) = (x - c)^T A (x - c)`` for positive semidefinite ``A`` (identity by default)."""

    def __init__(self, center, A=None):
        self.center = np.asarray(center, dtype=np.float64)
        self.A = np.eye(self.center.shape[0]) if A is None else np.asarray(A, dtype=np.float64)

    def __call__(self, x):
        r = np.asarray(x, dtype=np.float64) - self.center
        g = self.A @ r
        return float(r @ g), 2.0 * g


class L1Distance:
    """``f(x) = ||x - c||_1``; uses ``sign`` (0 at kinks) as the subgradient."""

    def __init__(self, center):
        self.center = np.asarray(center, dtype=np.float64)

    def __call__(self, x):
        r = np.asarray(x, dtype=np.float64) - self.center
        return float(np.abs(r).sum()), np.sign(r)


class EuclideanDistance:
    def __init__(self, center):
        self.center = np.asarray(center, dtype=np.float64)

    def __call__(self, x):
        r = np.asarray(x, dtype=np.float64) - self.center
        nr = float(np.linalg.norm(r))
        if nr == 0.0:
            return 0.0, np.zeros_like(r)
        return nr, r / nr


class MaxAffine:
    """``f(x) = max_k <a_k, x> + b_k``; subgradient of the first active piece."""

    def __init__(self, A, b):
        self.A = np.atleast_2d(np.asarray(A, dtype=np.float64))
        self.b = np.asarray(b, dtype=np.float64)

    def __call__(self, x):
        vals = self.A @ np.asarray(x, dtype=np.float64) + self.b
        k = int(np.argmax(vals))
        return float(vals[k]), self.A[k].copy()


class LogSumExp:
    """``f(x) = log sum_k exp(<a_k, x> + b_k)``."""

    def __init__(self, A, b):
        self.A = np.atleast_2d(np.asarray(A, dtype=np.float64))
        self.b = np.asarray(b, dtype=np.float64)

    def __call__(self, x):
        z = self.A @ np.asarray(x, dtype=np.float64) + self.b
        zmax = z.max()
        w = np.exp(z - zmax)
        total = w.sum()
        return float(zmax + math.log(total)), (w / total) @ self.A


ZOO = {
    "linear": Linear,
    "quadratic": Quadratic,
    "l1": L1Distance,
    "l2": EuclideanDistance,
    "max-affine": MaxAffine,
    "logsumexp": LogSumExp,
}
