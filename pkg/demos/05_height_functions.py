"""Height functions on flat surfaces, and flip paths between tilings.

On a coquadriculated surface (here: planar quadriculated regions) each
tiling gets a height function on faces, the average of its windings
against every tiling in its flux class. Heights order the class into a
lattice and yield shortest flip paths.
"""
from tritile.heights import (
    INF, apply_face_flip, build_planar_surface, enumerate_surface_tilings,
    face_flips, flip_connect, height_function, pointwise_min, tiling_classes,
    winding,
)

square = build_planar_surface([(x, y) for x in range(4) for y in range(4)])
print("4x4 square:", len(square.vertices), "cells,",
      len(square.edges), "edges,", len(square.faces), "faces")

classes = tiling_classes(square)
cls = classes[0]
print("tilings:", len(cls), "in", len(classes), "class(es), stable:",
      cls.stable)

t0, t1 = cls.tilings[0], cls.tilings[-1]
h0 = height_function(t0, cls)
print("height at the boundary is pinned:", h0[INF])
print("heights across faces of one tiling:",
      [str(h0[f]) for f in square.faces])

# Faces admitting a flip are exactly the strict local extrema of the
# height; flipping moves the height there by one.
print("flippable faces:", face_flips(square, t0))

# flip_connect returns a minimal path; its length is the total winding.
path = flip_connect(t0, t1, cls)
w = winding(t1, t0, square)
print("flip path of length", len(path),
      "= total |winding|", sum(abs(w[f]) for f in square.all_faces))
replay = t0
for f in path:
    replay = apply_face_flip(square, replay, f)
print("replay reaches the target:", replay == t1)

# Pointwise minima of heights stay within the class: the lattice meet.
h_meet = pointwise_min(h0, height_function(t1, cls))
print("meet height values:", [str(h_meet[f]) for f in square.faces])

# A width-1 annulus has no interior faces: its two tilings wind
# differently around the hole and no flip connects them.
ring = build_planar_surface([(x, y) for x in range(4) for y in range(4)
                             if not (1 <= x <= 2 and 1 <= y <= 2)])
ring_tilings = enumerate_surface_tilings(ring)
print("annulus tilings:", len(ring_tilings), "classes:",
      [len(c) for c in tiling_classes(ring)],
      "winding exists:", winding(ring_tilings[0], ring_tilings[1], ring)
      is not None)
