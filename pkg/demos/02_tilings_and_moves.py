"""Enumerate tilings and walk between them with flips and trits.

A tiling is a perfect matching of the dual graph: every cube is covered by
exactly one domino. Flips rotate two parallel dominoes inside a 2x2x1 slab;
trits rotate three mutually orthogonal dominoes inside a 2x2x2 cube and
carry a sign.
"""
from collections import Counter

from tritile import (
    apply_flip, apply_trit, base_tiling, build_box, enumerate_tilings,
    find_flips, find_trits, move_graph,
)

region = build_box(3, 3, 2)
tilings = list(enumerate_tilings(region))
print("3x3x2 box has", len(tilings), "tilings")

t = base_tiling(region, 2)
print("base tiling: all dominoes along z,",
      Counter(d.axis for d in t.dimers))

flips = find_flips(t)
print("available flips:", len(flips))
u = apply_flip(t, flips[0])
print("after one flip:", Counter(d.axis for d in u.dimers))

# Trits need three orthogonal dominoes in a 2x2x2 cube, so the base
# tiling has none; hunt for a tiling that admits one.
with_trit = next(tt for tt in tilings if find_trits(tt))
m = find_trits(with_trit)[0]
print("found a trit at anchor", m.anchor, "with sign", m.sign)
v = apply_trit(with_trit, m)
print("trit exchanges", len(m.removed), "dominoes for", len(m.inserted))

# The move graph over all tilings: flips alone leave two frozen tilings
# stranded, adding trits makes the space connected.
flip_graph = move_graph(tilings, "flip")
print("flip components:", [len(c) for c in flip_graph.components()])
full_graph = move_graph(tilings, "flip+trit")
print("flip+trit components:", [len(c) for c in full_graph.components()])

frozen = [flip_graph.tilings[c[0]] for c in flip_graph.components()
          if len(c) == 1]
print("frozen tilings admit no flips:",
      [len(find_flips(f)) for f in frozen])
