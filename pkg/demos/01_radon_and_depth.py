"""Radon points and Tukey depth.

Any d + 2 points in R^d split into two groups whose convex hulls meet.
The meeting point (the Radon point) is at depth at least 2 among the
d + 2 points: no closed halfspace through it holds fewer than two of them.
This is the engine of everything else in the package.
"""
import numpy as np

from radonurn import radon_point, tukey_depth_exact, tukey_depth_sampled

rng = np.random.default_rng(1)

print("Four points in the plane:")
pts = rng.standard_normal((4, 2)).round(2)
part = radon_point(pts)
print(pts)
print(f"  groups {part.part1} and {part.part2} meet at {part.point.round(4)}")
print(f"  depth of the Radon point among the four: {tukey_depth_exact(pts, part.point).depth}")

print("\nFive points in space:")
pts = rng.standard_normal((5, 3)).round(2)
part = radon_point(pts)
print(f"  groups {part.part1} and {part.part2} meet at {part.point.round(4)}")
print(f"  depth: {tukey_depth_exact(pts, part.point).depth}")

print("\nDepth of a few query points in a cloud of 500 Gaussian points:")
P = rng.standard_normal((500, 2))
for q in ([0, 0], [0.5, 0.5], [1.5, 0], [3, 3]):
    exact = tukey_depth_exact(P, q).depth
    approx = tukey_depth_sampled(P, q, 5000, seed=0).depth
    print(f"  q = {q!s:<10} exact {exact:4d}   random directions {approx:4d} (never below exact)")
