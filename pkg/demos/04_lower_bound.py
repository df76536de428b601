"""A certified lower bound on min_{p in P} f(p) with few subgradient queries.

Evaluate f and a subgradient v at a centerpoint c of the surviving points.
Every point with <v, x - c> > 0 has f(x) > f(c), so it can be dropped, and
a centerpoint guarantees that a constant fraction goes each time. The
smallest value seen is never above the true minimum.
"""
import numpy as np

from radonurn import generate, lower_bound_min
from radonurn.convex_opt import L1Distance, MaxAffine, Quadratic

rng = np.random.default_rng(5)
P = generate("gaussian-mixture", 20_000, 3, seed=5)
functions = {
    "squared distance": Quadratic(rng.standard_normal(3)),
    "l1 distance": L1Distance(rng.standard_normal(3)),
    "max of 6 planes": MaxAffine(rng.standard_normal((6, 3)), rng.standard_normal(6)),
}
for name, f in functions.items():
    res = lower_bound_min(P, f, seed=1)
    exact = min(f(p)[0] for p in P)
    print(f"{name:17s} bound {res.value:10.4f}  true min {exact:10.4f}  "
          f"oracle calls {res.oracle_calls:3d} for n = {P.shape[0]}")
