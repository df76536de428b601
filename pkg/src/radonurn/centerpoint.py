"""Approximate centerpoints by iterated Radon-point replacement."""
from dataclasses import asdict, dataclass
import math
import warnings

import numpy as np

from . import _kernels
from ._rng import child_seed, make_rng
from .errors import DegenerateInput, DomainError
from .geometry import as_points

CHUNK = 1 << 15
RADON_REL_TOL = 1e-12
RADON_ZERO_TOL = 1e-12


class SampleSizeWarning(UserWarning):
    """The working set is smaller than the size the quality guarantee assumes."""


def quality_target(d, eps_a, eps_w):
    """Guaranteed centerpoint quality ``(1 - eps_a)(1 - 2 eps_w) / (d + 2)^2``.

    The closed end points ``eps_a = 0`` and ``eps_w = 0`` are accepted as limits.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    if not 0.0 <= eps_a < 1.0:
        raise DomainError("eps_a must lie in [0, 1)")
    if not 0.0 <= eps_w < 0.25:
        raise DomainError("eps_w must lie in [0, 1/4)")
    return (1.0 - eps_a) * (1.0 - 2.0 * eps_w) / (d + 2) ** 2


def sample_size(d, eps_b, phi, c_s=1.0):
    """Relative-approximation sample size ``c_s d^2 eps_b^-2 (d ln d + ln 1/phi)``."""
    return max(1, math.ceil(c_s * d**2 / eps_b**2 * (d * math.log(d) + math.log(1.0 / phi))))


def iteration_budget(d, s, phi, c_t=2.0):
    """Radon rounds ``c_T d s ln s ln(s / phi)`` for a working set of size ``s``."""
    if s <= 1:
        return 0
    return math.ceil(c_t * d * s * math.log(s) * math.log(s / phi))


def raw_min_size(d, eps_a, phi, c=1.0):
    """Working-set size below which the raw algorithm's guarantee is not claimed."""
    return c * (d**3 * math.log(d) + d**2 * math.log(1.0 / phi)) / eps_a


@dataclass(frozen=True)
class CenterpointParams:
    d: int
    eps_b: float
    phi: float
    eps_a: float
    eps_w: float
    rho: float
    sample_size: int
    iteration_budget: int
    c_s: float = 1.0
    c_t: float = 2.0
    seed: int = 0

    @classmethod
    def from_eps_b(cls, d, eps_b, phi, c_s=1.0, c_t=2.0, seed=0):
        """Parameters derived from the quality slack ``eps_b``.

        ``eps_a = eps_b/2``, ``eps_w = eps_b/4``, ``rho = 1/(8 d^2)``.
        """
        _check_unit("eps_b", eps_b)
        _check_unit("phi", phi)
        s = sample_size(d, eps_b, phi, c_s)
        return cls(
            d=d,
            eps_b=eps_b,
            phi=phi,
            eps_a=eps_b / 2.0,
            eps_w=eps_b / 4.0,
            rho=1.0 / (8.0 * d**2),
            sample_size=s,
            iteration_budget=iteration_budget(d, s, phi, c_t),
            c_s=c_s,
            c_t=c_t,
            seed=seed,
        )

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class CenterpointResult:
    point: np.ndarray
    iterations: int
    quality_target: float
    working_size: int
    params: dict

    def to_dict(self):
        return {
            "point": self.point.tolist(),
            "iterations": self.iterations,
            "quality_target": self.quality_target,
            "working_size": self.working_size,
            "params": self.params,
        }


def _check_unit(name, value):
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie in (0, 1), got {value}")


def radon_rounds(Q, rounds, rng):
    """Apply ``rounds`` Radon replacements to the working array ``Q`` in place."""
    s, d = Q.shape
    done = 0
    while done < rounds:
        k = min(CHUNK, rounds - done)
        draws = rng.integers(0, s, size=(k, d + 3))
        failed = _kernels.radon_iterate(Q, draws, RADON_REL_TOL, RADON_ZERO_TOL)
        if failed:
            # one fresh draw per failed round, then give up
            retry = rng.integers(0, s, size=(failed, d + 3))
            if _kernels.radon_iterate(Q, retry, RADON_REL_TOL, RADON_ZERO_TOL):
                raise DegenerateInput("Radon solve failed twice in a row")
        done += k
    return Q


def approx_centerpoint_raw(Q, eps_a, eps_w, phi, seed, c_t=2.0, c_size=1.0):
    """Iterated Radon replacement on the working multiset ``Q``.

    Each round draws ``d + 2`` points of the multiset with replacement and
    overwrites a uniformly random element with their Radon point. After
    ``c_t d s ln s ln(s/phi)`` rounds a uniformly random element is returned.
    """
    X = as_points(Q)
    s, d = X.shape
    _check_unit("eps_a", eps_a)
    if not 0.0 < eps_w < 0.25:
        raise DomainError("eps_w must lie in (0, 1/4)")
    _check_unit("phi", phi)
    if s < raw_min_size(d, eps_a, phi, c_size):
        warnings.warn(
            f"working set of {s} points is below the size {raw_min_size(d, eps_a, phi, c_size):.0f} "
            "assumed by the quality guarantee",
            SampleSizeWarning,
            stacklevel=2,
        )
    rng = make_rng(seed)
    T = iteration_budget(d, s, phi, c_t)
    W = np.array(X, dtype=np.float64, order="C", copy=True)
    radon_rounds(W, T, rng)
    pick = int(rng.integers(0, s))
    params = {"eps_a": eps_a, "eps_w": eps_w, "phi": phi, "c_t": c_t}
    return CenterpointResult(W[pick].copy(), T, quality_target(d, eps_a, eps_w), s, params)


def approx_centerpoint(P, eps_b, phi, seed, c_s=1.0, c_t=2.0):
    """A ``(1 - eps_b)/(d + 2)^2``-centerpoint of ``P`` with probability ``>= 1 - phi``.

    Draws a sample of the size needed for a relative approximation of
    halfspace ranges (skipped when ``P`` is no larger), then runs
    :func:`approx_centerpoint_raw` on it with ``eps_a = eps_b/2`` and
    ``eps_w = eps_b/4``.
    """
    X = as_points(P)
    n, d = X.shape
    params = CenterpointParams.from_eps_b(d, eps_b, phi, c_s, c_t)
    rng = make_rng(seed)
    if n <= params.sample_size:
        if n < params.sample_size:
            warnings.warn(
                f"{n} points is fewer than the sample size {params.sample_size}; running on all of them",
                SampleSizeWarning,
                stacklevel=2,
            )
        N = X
    else:
        N = X[rng.integers(0, n, size=params.sample_size)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SampleSizeWarning)
        raw = approx_centerpoint_raw(N, params.eps_a, params.eps_w, phi, child_seed(rng), c_t)
    info = params.to_dict()
    info["seed"] = seed if not isinstance(seed, np.random.Generator) else None
    return CenterpointResult(raw.point, raw.iterations, (1.0 - eps_b) / (d + 2) ** 2, N.shape[0], info)
