"""Discrete surfaces and the flux through them.

A discrete surface is a coherently oriented set of unit squares in the
dual complex. The flux of a tiling through a surface counts, with color
signs, how the dominoes at its vertices cross it; closed surfaces always
see zero.
"""
import random

from tritile import (
    DiscreteSurface, Square, apply_flip, base_tiling, build_box, build_torus,
    closed_box_surface, cutting_surface, diff_cycles, find_flips, flux,
    flux_through_surface, mixed_torus_tiling, surface_predicates,
)

box = build_box(4, 4, 4)
shell = closed_box_surface(box, (0, 0, 0), (2, 2, 2))
print("closed shell:", len(shell.squares), "squares, closed:",
      shell.is_closed, "vertices on it:", len(shell.interior_vertices))

t = base_tiling(box, 2)
rng = random.Random(1)
for _ in range(5):
    t = apply_flip(t, rng.choice(find_flips(t)))
print("flux through the shell stays", flux_through_surface(t, shell))

# On a torus, a cutting surface spans a whole cross-section; the flux
# through it detects winding.
torus = build_torus(4, 4, 4)
xcut = cutting_surface(torus, 0, 0)
print("x-cut:", len(xcut.squares), "squares")
print("base tiling through x-cut:",
      flux_through_surface(base_tiling(torus, 0), xcut))
star = mixed_torus_tiling()
print("wound tiling through x-cut:", flux_through_surface(star, xcut),
      " flux:", tuple(flux(star).components))

# Surfaces can also be assembled square by square; orientations must
# agree along shared edges.
hand_made = DiscreteSurface(build_box(2, 2, 1), [Square((1, 1, 0), 2, 1)])
print("hand-made surface of one square, boundary edges:",
      len(hand_made.boundary_edges))

# Predicates compare a surface against a pair of tilings: does its
# boundary match their difference, is it balanced, does it see no flux?
r = build_box(2, 2, 1)
t0 = base_tiling(r, 0)
t1 = apply_flip(t0, find_flips(t0)[0])
square = DiscreteSurface(r, [Square((1, 1, 0), 2, 1)])
print("difference cycles of the flip pair:",
      len(diff_cycles(t1, t0).nontrivial))
print("predicates:", surface_predicates(t0, t1, square))
