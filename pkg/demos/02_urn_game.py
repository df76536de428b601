"""Radon's urn: why iterated Radon replacement converges.

Picture n balls, r of them red ("bad": shallow with respect to some
halfspace). Each round draws t = d + 2 balls; the new ball is red only if
at least two of the drawn balls were red, and it replaces a random ball.
While r is small, reds are much more likely to die than to be born, so
the red count behaves like a random walk drifting down to zero.
"""
import numpy as np

from radonurn._rng import trial_seed
from radonurn.urn import UrnConfig, gamblers_ruin_top, p_decrease, p_increase, simulate_urn, simulate_walk

cfg = UrnConfig.sized(t=4, eps_w=1 / 6, eps_a=0.5, phi=0.1)
print(f"Sized urn: n = {cfg.n}, t = {cfg.t}, start with r0 = {cfg.r0} red, fail if red reaches {cfg.red_cap}")

print("\nOne-round odds at a few red counts:")
for r in (1, 5, cfg.r0, int(cfg.r_max)):
    up, down = p_increase(r, cfg.n, cfg.t), p_decrease(r, cfg.n, cfg.t)
    print(f"  r = {r:3d}: P(+1) = {up:.2e}   P(-1) = {down:.2e}   ratio {up / down:.3f}")

games = [simulate_urn(cfg.with_seed(trial_seed(2, i))) for i in range(200)]
blue = sum(g.outcome == "AllBlue" for g in games)
iters = np.array([g.total_iterations for g in games if g.outcome == "AllBlue"])
print(f"\n200 games: {blue} ended all blue; rounds used: median {np.median(iters):.0f}, max {iters.max()}")

print("\nThe same drift in a plain biased walk, against the gambler's-ruin formula:")
start, top, eps_w = 5, 10, 1 / 6
trials = 20_000
hits = sum(simulate_walk(start, top, eps_w, trial_seed(3, i)).outcome == "ReachedRmax" for i in range(trials))
print(f"  reach {top} from {start}: simulated {hits / trials:.4f}, exact {gamblers_ruin_top(start, top, 0.5 + eps_w):.4f}")
