"""Radon's urn game, the biased walk that dominates it, and the tail bounds
used to analyse both."""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy import stats

from . import _kernels
from ._rng import make_rng
from .errors import DomainError

CHUNK = 1 << 14

ALL_BLUE = "AllBlue"
REACHED_RMAX = "ReachedRmax"
BUDGET_EXHAUSTED = "BudgetExhausted"
REACHED_ZERO = "ReachedZero"


# --- exact probabilities --------------------------------------------------

def _check_urn_args(r, n, t):
    r = np.asarray(r, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    if np.any(n <= 0) or np.any(r < 0) or np.any(r > n):
        raise DomainError("need 0 <= r <= n and n > 0")
    if int(t) != t or t < 2:
        raise DomainError("t must be an integer >= 2")
    return r, n, int(t)


def p_two_red(r, n, t):
    """Probability that a size-``t`` sample (with replacement) holds >= 2 red balls.

    Summed term by term as ``sum_{i>=2} C(t,i) p^i (1-p)^(t-i)`` with
    ``p = r/n``; every term is non-negative so there is no cancellation.
    Vectorised over ``r`` and ``n``.
    """
    r, n, t = _check_urn_args(r, n, t)
    p = r / n
    q = 1.0 - p
    out = np.zeros(np.broadcast(p, q).shape)
    for i in range(t, 1, -1):
        out = out + math.comb(t, i) * p**i * q ** (t - i)
    return float(out) if out.ndim == 0 else out


def p_two_red_complement(r, n, t):
    """Same quantity as ``1 - (1-p)^t - t p (1-p)^(t-1)``; loses precision for small p."""
    r, n, t = _check_urn_args(r, n, t)
    p = r / n
    out = 1.0 - (1.0 - p) ** t - t * p * (1.0 - p) ** (t - 1)
    return float(out) if np.ndim(out) == 0 else out


def p_increase(r, n, t):
    """Probability that one round adds a red ball (>= 2 red drawn, blue deleted)."""
    return p_two_red(r, n, t) * (1.0 - np.asarray(r) / np.asarray(n))


def p_decrease(r, n, t):
    """Probability that one round removes a red ball (< 2 red drawn, red deleted)."""
    return (1.0 - p_two_red(r, n, t)) * (np.asarray(r) / np.asarray(n))


def r_max(n, t, eps_w):
    """Red-count threshold ``(1 - 2 eps_w) n / t^2`` below which reds drift to zero."""
    return (1.0 - 2.0 * eps_w) * n / t**2


def drift_ratio(eps_w):
    """``(1/2 - eps_w) / (1/2 + eps_w)``, the up/down odds bound below ``r_max``."""
    return (0.5 - eps_w) / (0.5 + eps_w)


def urn_min_n(t, eps_w, eps_a, phi):
    """Smallest ``n`` for which ``r_max`` clears the walk-failure threshold at ``phi/2``.

    ``(1 - 2 eps_w) n / t^2 >= ln(1 / (4 eps_w^2 phi / 2)) / (2 eps_w eps_a)``.
    """
    need = walk_rmax_threshold(eps_w, eps_a, phi / 2.0)
    return math.ceil(need * t**2 / (1.0 - 2.0 * eps_w))


def visits_bound(eps_w, phi):
    """Visit count of a fixed level exceeded with probability at most ``phi``."""
    return math.log(1.0 / (4.0 * eps_w**2 * phi)) / (4.0 * eps_w**2)


def walk_rmax_threshold(eps_w, eps_a, phi):
    """``r_max`` large enough that the walk from ``(1-eps_a) r_max`` fails w.p. <= phi."""
    return math.log(1.0 / (4.0 * eps_w**2 * phi)) / (2.0 * eps_w * eps_a)


def urn_iteration_scale(n, phi):
    """``n ln n ln(n/phi)``, the shape of the total-iteration bound."""
    return n * math.log(n) * math.log(n / phi)


def dwell_scale(n, r, phi):
    """``(n/r) ln(1/phi)``, the shape of the per-level dwell bound."""
    return (n / r) * math.log(1.0 / phi)


def gamblers_ruin_top(start, top, p_down):
    """Probability that a +-1 walk from ``start`` hits ``top`` before 0."""
    p_up = 1.0 - p_down
    if p_up == p_down:
        return start / top
    ratio = p_down / p_up
    # ((q/p)^start - 1) / ((q/p)^top - 1), evaluated without overflow
    if ratio > 1.0:
        return math.exp((start - top) * math.log(ratio)) * (-math.expm1(-start * math.log(ratio))) / (
            -math.expm1(-top * math.log(ratio))
        )
    return math.expm1(start * math.log(ratio)) / math.expm1(top * math.log(ratio))


# --- configurations and traces --------------------------------------------

@dataclass(frozen=True)
class UrnConfig:
    n: int
    t: int
    r0: int
    eps_w: float = 1.0 / 6.0
    eps_a: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.t < 2:
            raise DomainError("need n >= 1 and t >= 2")
        if not 0 <= self.r0 <= self.n:
            raise DomainError("need 0 <= r0 <= n")
        if not 0.0 < self.eps_w < 0.25:
            raise DomainError("eps_w must lie in (0, 1/4)")
        if not 0.0 < self.eps_a < 1.0:
            raise DomainError("eps_a must lie in (0, 1)")

    @property
    def r_max(self):
        return r_max(self.n, self.t, self.eps_w)

    @property
    def red_cap(self):
        """Integer red count at which a game is declared failed."""
        return max(1, math.ceil(self.r_max))

    @classmethod
    def sized(cls, t, eps_w, eps_a, phi, seed=0, n=None):
        """Config with ``r0 = floor((1 - eps_a) r_max)`` and ``n`` from :func:`urn_min_n` if omitted."""
        if n is None:
            n = urn_min_n(t, eps_w, eps_a, phi)
        r0 = math.floor((1.0 - eps_a) * r_max(n, t, eps_w))
        return cls(n=int(n), t=int(t), r0=int(r0), eps_w=eps_w, eps_a=eps_a, seed=seed)

    def with_seed(self, seed):
        return UrnConfig(self.n, self.t, self.r0, self.eps_w, self.eps_a, seed)


@dataclass
class UrnTrace:
    total_iterations: int
    effective_iterations: int
    max_red_seen: int
    final_red: int
    outcome: str
    dwell: np.ndarray = field(repr=False)
    visits: np.ndarray = field(repr=False)

    def to_dict(self):
        return {
            "total_iterations": self.total_iterations,
            "effective_iterations": self.effective_iterations,
            "max_red_seen": self.max_red_seen,
            "final_red": self.final_red,
            "outcome": self.outcome,
        }


@dataclass
class WalkTrace:
    start: int
    steps: int
    final: int
    outcome: str
    visits: np.ndarray = field(repr=False)

    def to_dict(self):
        return {"start": self.start, "steps": self.steps, "final": self.final, "outcome": self.outcome}


def simulate_urn(cfg, max_iterations=10**9):
    """Play one game of Radon's urn, ball by ball.

    Each round marks a uniformly random ball for deletion, draws ``t`` balls
    with replacement, inserts a red ball iff at least two draws were red,
    then removes the marked ball. The game ends at zero reds, at
    ``cfg.red_cap`` reds, or after ``max_iterations`` rounds. Balls
    ``0..r-1`` are red, so index draws decide colours directly.
    """
    rng = make_rng(cfg.seed)
    cap = cfg.red_cap
    r = int(cfg.r0)
    size = max(r, cap) + 1
    dwell = np.zeros(size, dtype=np.int64)
    visits = np.zeros(size, dtype=np.int64)
    visits[r] += 1
    total = effective = 0
    max_red = r
    while r != 0 and r < cap and total < max_iterations:
        k = min(CHUNK, max_iterations - total)
        draws = rng.integers(0, cfg.n, size=(k, cfg.t + 1))
        r, played, eff, mr, stopped = _kernels.urn_chunk(
            r, cfg.n, cfg.t, cap, draws[:, 0], draws[:, 1:], dwell, visits, max_iterations - total
        )
        total += played
        effective += eff
        max_red = max(max_red, mr)
        if stopped:
            break
    if r == 0:
        outcome = ALL_BLUE
    elif r >= cap:
        outcome = REACHED_RMAX
    else:
        outcome = BUDGET_EXHAUSTED
    return UrnTrace(total, effective, int(max_red), int(r), outcome, dwell, visits)


def simulate_walk(start, r_max_level, eps_w, seed, max_steps=10**8):
    """+-1 walk stepping down with probability ``1/2 + eps_w``; absorbed at 0 and ``r_max_level``."""
    start = int(start)
    top = int(r_max_level)
    if not 0 < start < top:
        raise DomainError(f"need 0 < start < r_max_level, got start={start}, top={top}")
    if not 0.0 < eps_w < 0.25:
        raise DomainError("eps_w must lie in (0, 1/4)")
    rng = make_rng(seed)
    p_down = 0.5 + eps_w
    visits = np.zeros(min(top, start + 1024) + 1, dtype=np.int64)
    visits[start] = 1
    y = start
    steps = 0
    chunk = 64  # most walks are short; grow the draw size geometrically
    while 0 < y < top and steps < max_steps:
        u = rng.random(min(chunk, max_steps - steps))
        chunk = min(CHUNK, 2 * chunk)
        y, done = _kernels.walk_chunk(y, top, p_down, u, visits, max_steps - steps)
        steps += done
        if y == visits.shape[0] - 1 and y < top:
            grown = np.zeros(min(top, 2 * visits.shape[0]) + 1, dtype=np.int64)
            grown[: visits.shape[0]] = visits
            visits = grown
    if y <= 0:
        outcome = REACHED_ZERO
    elif y >= top:
        outcome = REACHED_RMAX
    else:
        outcome = BUDGET_EXHAUSTED
    return WalkTrace(start, steps, int(y), outcome, visits)


# --- tail bounds ------------------------------------------------------------

def verify_tail_bound(n, k, p):
    """Both sides of ``P[Bin(n, p) >= k] <= C(n, k) p^k``.

    Returns ``(lhs, rhs, holds)`` with ``holds = lhs <= rhs + 1e-12``.
    """
    if not (0 <= k <= n) or int(n) != n or int(k) != k:
        raise DomainError("need integers 0 <= k <= n")
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    n, k = int(n), int(k)
    lhs = math.fsum(math.comb(n, i) * p**i * (1.0 - p) ** (n - i) for i in range(k, n + 1))
    rhs = math.comb(n, k) * p**k
    return lhs, rhs, lhs <= rhs + 1e-12


def geometric_sum_bound(m, lam):
    """``lam^-1 2^(-2 m (lam - 1 - ln lam))`` bounding ``P[sum of m Geom(1/2) >= 2 lam m]``."""
    return 2.0 ** (-2.0 * m * (lam - 1.0 - math.log(lam))) / lam


def geometric_sum_tail(m, lam, trials, seed):
    """Monte Carlo estimate of ``P[X_1 + ... + X_m >= 2 lam m]``, ``X_i ~ Geom(1/2)`` on {1, 2, ...}."""
    if m < 1 or lam < 1.0:
        raise DomainError("need m >= 1 and lam >= 1")
    rng = make_rng(seed)
    hits = 0
    done = 0
    block = max(1, 4_000_000 // m)
    while done < trials:
        k = min(block, trials - done)
        sums = rng.geometric(0.5, size=(k, m)).sum(axis=1)
        hits += int(np.count_nonzero(sums >= 2.0 * lam * m))
        done += k
    return hits / trials


def geometric_sum_exact(m, lam):
    """Exact ``P[sum >= 2 lam m]`` via the negative binomial distribution."""
    # sum of m Geom(1/2) on {1,..} equals m + NegBin(m, 1/2) failures
    threshold = math.ceil(2.0 * lam * m)
    return float(stats.nbinom.sf(threshold - m - 1, m, 0.5))
