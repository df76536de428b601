"""Functional nets: is a convex body heavy, asked only through a separation oracle?

A stored random sample is pruned by the halfspaces the oracle returns at
centerpoints of the still-active sample. If a query lands inside the body it
is reported Heavy; if the active part shrinks to eps/8 of the sample it is
reported Light, and a Light verdict is never wrong when the sample is good.
Thin bodies through the middle can still look Heavy: false positives are
allowed.
"""
from radonurn import build_funcnet, generate, query_funcnet
from radonurn.bodies import Ball, Nowhere, Slab

n, eps = 10_000, 0.1
P = generate("uniform-square", n, 2, seed=8)
net = build_funcnet(P, eps, 0.1, seed=1)
print(f"net of {net.sample.shape[0]} sample points for eps = {eps}; tau = {net.params.tau}")
bodies = {
    "central ball": Ball([0.5, 0.5], 0.3),
    "corner ball": Ball([0.05, 0.05], 0.1),
    "thin slab": Slab([0.0, 1.0], 0.5, 0.51),
    "empty": Nowhere(2),
}
for name, body in bodies.items():
    tr = query_funcnet(net, body, seed=2)
    share = body.count(P) / n
    print(f"  {name:12s} holds {share:6.1%}: {tr.verdict:5s} after {tr.oracle_calls} oracle calls")
