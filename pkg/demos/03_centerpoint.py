"""Approximate centerpoints of a large point set.

A centerpoint is a point of depth at least n/(d+1). The algorithm samples a
few hundred points, repeatedly replaces a random sample element with the
Radon point of d + 2 random elements, and returns a random survivor. Its
depth is guaranteed to be at least (1 - eps_b) n / (d + 2)^2 with high
probability, and in practice it is much deeper.
"""
import numpy as np

from radonurn import approx_centerpoint, generate, tukey_depth_exact, tukey_depth_sampled

eps_b, phi = 0.5, 0.1
for dist in ("uniform-square", "gaussian-mixture", "clustered"):
    P = generate(dist, 2000, 2, seed=1)
    res = approx_centerpoint(P, eps_b, phi, seed=7)
    depth = tukey_depth_exact(P, res.point).depth
    target = (1 - eps_b) * 2000 / 16
    print(f"{dist:17s} sample {res.working_size}, {res.iterations} Radon rounds -> depth {depth} "
          f"(guarantee {target:.1f}, best possible >= {2000 / 3:.0f})")

P = generate("ball", 5000, 5, seed=2)
res = approx_centerpoint(P, eps_b, phi, seed=3)
upper = tukey_depth_sampled(P, res.point, 20_000, seed=4).depth
print(f"\n5-d ball, n = 5000: random-direction depth of the output {upper} "
      f"(guarantee {0.5 * 5000 / 49:.1f}); exact depth is not computed in 5-d")
