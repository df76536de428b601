"""Synthetic point sets for tests, demos and the ``gen`` subcommand."""
import numpy as np

from ._rng import make_rng
from .errors import DomainError


def uniform_square(n, d, rng):
    return rng.random((n, d))


def gaussian_mixture(n, d, rng, k=3):
    """Three unit-variance Gaussian clusters with well separated means."""
    means = 6.0 * rng.standard_normal((k, d))
    labels = rng.integers(0, k, size=n)
    return means[labels] + rng.standard_normal((n, d))


def circle(n, d, rng):
    """Uniform on the unit sphere ``S^{d-1}`` (the unit circle for d = 2)."""
    if d == 1:
        return np.where(rng.random((n, 1)) < 0.5, -1.0, 1.0)
    X = rng.standard_normal((n, d))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def ball(n, d, rng):
    """Uniform in the unit ball."""
    X = circle(n, d, rng) if d > 1 else np.ones((n, 1))
    return X * rng.random((n, 1)) ** (1.0 / d)


def clustered(n, d, rng, k=5, spread=0.03):
    """``k`` tight clusters whose centres are uniform in the unit cube, with uneven weights."""
    centres = rng.random((k, d))
    weights = rng.dirichlet(np.ones(k))
    labels = rng.choice(k, size=n, p=weights)
    return centres[labels] + spread * rng.standard_normal((n, d))


DISTRIBUTIONS = {
    "uniform-square": uniform_square,
    "gaussian-mixture": gaussian_mixture,
    "circle": circle,
    "ball": ball,
    "clustered": clustered,
}


def generate(dist, n, d, seed):
    """``n`` points in ``d`` dimensions from the named distribution."""
    if dist not in DISTRIBUTIONS:
        raise DomainError(f"unknown distribution {dist!r}; choose from {sorted(DISTRIBUTIONS)}")
    if n < 1 or d < 1:
        raise DomainError("need n >= 1 and d >= 1")
    return DISTRIBUTIONS[dist](int(n), int(d), make_rng(seed))
