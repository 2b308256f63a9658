"""Two invariants that organize the space of tilings.

Flux measures how a tiling winds around the torus directions; it never
changes under flips or trits. Twist is an integer (a residue on tori)
that flips preserve and each trit moves by exactly its sign.
"""
from collections import Counter, defaultdict

from tritile import (
    apply_trit, base_tiling, build_box, build_torus, enumerate_tilings,
    find_trits, flux, mixed_torus_tiling, modulus, relative_twist, twist,
)

box = build_box(3, 3, 2)
tilings = list(enumerate_tilings(box))
print("twist histogram over the 3x3x2 box:",
      dict(Counter(twist(t, 2) for t in tilings)))

# The twist can be computed along any axis; the value agrees.
sample = tilings[17]
print("axis independence:", [twist(sample, axis) for axis in range(3)])

# A positive trit raises the twist by one.
t = next(tt for tt in tilings if any(m.sign > 0 for m in find_trits(tt)))
m = next(m for m in find_trits(t) if m.sign > 0)
print("trit:", twist(t, 2), "->", twist(apply_trit(t, m), 2))

# Boxes have no winding, so their flux is trivial; tori are where flux
# lives. Group all tilings of a small torus by their flux vector.
torus = build_torus(2, 2, 4)
classes = defaultdict(int)
for t in enumerate_tilings(torus):
    classes[flux(t).components] += 1
print("torus(2,2,4) flux classes:", dict(sorted(classes.items())))

f = flux(base_tiling(torus, 0))
print("base flux:", tuple(f.components), "modulus:", modulus(f))

# Relative twist compares two tilings of equal flux directly; on a torus
# it is only defined modulo the flux modulus.
star = mixed_torus_tiling()
fs = flux(star)
print("mixed 4x4x4 torus tiling: flux", tuple(fs.components),
      "modulus", modulus(fs))
a, b = tilings[3], tilings[40]
print("relative twist on the box:", relative_twist(a, b),
      "=", twist(a, 2), "-", twist(b, 2))
