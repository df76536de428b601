"""Weak eps-nets and center nets in the plane.

Take a small random sample N and every intersection of lines through two
sample points. For every subset of N one of these points is a 1/3-centerpoint,
so every convex set that holds an eps fraction of the data contains one of
them, and in fact one that is fairly deep inside the set.
"""
import numpy as np

from radonurn import generate
from radonurn.bodies import Ball
from radonurn.centernet import (
    CenterNetParams,
    draw_weak_net_sample,
    universal_centerpoints,
    verify_center_net,
)
from radonurn.depth import tukey_depth_exact

n, eps = 500, 0.25
P = generate("uniform-square", n, 2, seed=9)
N = draw_weak_net_sample(P, eps, 0.1, seed=1)
U = universal_centerpoints(N).candidates
params = CenterNetParams.create(2, eps, 0.1)
print(f"sample of {N.shape[0]} points -> {U.shape[0]} net points; tau = {params.tau}, beta = {params.beta:.4f}")

rng = np.random.default_rng(3)
for _ in range(5):
    body = Ball(rng.random(2), rng.uniform(0.3, 0.5))
    members = P[body.contains(P)]
    if members.shape[0] < eps * n:
        continue
    res = verify_center_net(N, P, members, eps)
    depth = tukey_depth_exact(members, res.point).depth
    print(f"  ball holding {members.shape[0]:3d} points: net point {res.point.round(3)} has depth {depth:3d} "
          f"(needs {params.beta * members.shape[0]:.1f}), found in {res.iterations} round(s)")
