"""Independent oracles and frozen fixtures shared by the test modules.

Everything here recomputes results from first principles, without going
through the library's own adjacency tables or twist formula, so that the
tests compare two genuinely different code paths.
"""

from tritile import Tiling, build_box


def _wrap_delta(a: int, b: int, p) -> int:
    if p is None:
        return b - a
    d = (b - a) % p
    return d if d <= p // 2 else d - p


def adjacent_cells(u, v, periods) -> bool:
    """Face adjacency from raw coordinates only (wrapping on tori)."""
    diffs = []
    for k in range(3):
        p = periods[k] if periods is not None else None
        if p is None:
            d = abs(v[k] - u[k])
        else:
            d = min((v[k] - u[k]) % p, (u[k] - v[k]) % p)
        diffs.append(d)
    return sorted(diffs) == [0, 0, 1]


def count_matchings(cells, periods=None, parity=0) -> int:
    """Perfect matching count via the Ryser permanent formula.

    Independent of the library: adjacency comes straight from coordinates
    and the count is an inclusion-exclusion sum, not a backtracking search.
    Only usable for small instances (2^#white subsets).
    """
    cells = list(cells)
    blacks = [c for c in cells if (sum(c) + parity) % 2 == 0]
    whites = [c for c in cells if (sum(c) + parity) % 2 == 1]
    if len(blacks) != len(whites):
        return 0
    n = len(whites)
    if n == 0:
        return 1
    if n > 20:
        raise ValueError("Ryser oracle limited to 20 white cells")
    rows = []
    for w in whites:
        mask = 0
        for j, b in enumerate(blacks):
            if adjacent_cells(w, b, periods):
                mask |= 1 << j
        rows.append(mask)
    total = 0
    for s in range(1 << n):
        prod = 1
        bits = bin(s).count("1")
        for mask in rows:
            prod *= bin(mask & s).count("1")
            if prod == 0:
                break
        total += (-1) ** (n - bits) * prod
    return total


def count_planar_matchings(surface) -> int:
    """Matching count for a coquadriculated surface graph, again via Ryser."""
    blacks = [v for v, c in surface.colors.items() if c == 1]
    whites = [v for v, c in surface.colors.items() if c == -1]
    if len(blacks) != len(whites):
        return 0
    n = len(whites)
    if n > 20:
        raise ValueError("Ryser oracle limited to 20 white vertices")
    windex = {v: i for i, v in enumerate(whites)}
    bindex = {v: i for i, v in enumerate(blacks)}
    rows = [0] * n
    for (b, w, _l, _r) in surface.edges:
        rows[windex[w]] |= 1 << bindex[b]
    total = 0
    for s in range(1 << n):
        prod = 1
        bits = bin(s).count("1")
        for mask in rows:
            prod *= bin(mask & s).count("1")
            if prod == 0:
                break
        total += (-1) ** (n - bits) * prod
    return total


def _det3(a, b, c) -> int:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _open_overlap(a0, a1, b0, b1) -> bool:
    return a1 > b0 and b1 > a0


def slow_twist(t: Tiling, axis: int) -> int:
    """Literal shadow sum: for each ordered dimer pair (d, d'), a quarter of
    det[v(d'), v(d), e_axis] whenever the open shadow of d's solid, pushed
    along +axis, meets the open solid of d'. Plain loops, no vectorization.
    """
    e = [0, 0, 0]
    e[axis] = 1
    solids = []
    for d in t.dimers:
        lo = [min(d.white[k], d.black[k]) for k in range(3)]
        hi = [lo[k] + 1 + (1 if k == d.axis else 0) for k in range(3)]
        solids.append((lo, hi, d.direction))
    quarters = 0
    for (alo, ahi, va) in solids:
        for (blo, bhi, vb) in solids:
            if (alo, ahi) == (blo, bhi):
                continue
            hit = bhi[axis] > alo[axis]
            for k in range(3):
                if k != axis and not _open_overlap(alo[k], ahi[k], blo[k], bhi[k]):
                    hit = False
            if hit:
                quarters += _det3(vb, va, e)
    assert quarters % 4 == 0
    return quarters // 4


_TRIO_A = (((0, 0, 1), (1, 0, 1)), ((0, 1, 0), (0, 0, 0)), ((1, 1, 1), (1, 1, 0)))
_TRIO_B = (((0, 1, 0), (1, 1, 0)), ((1, 1, 1), (1, 0, 1)), ((0, 0, 1), (0, 0, 0)))
_REST = (((1, 0, 0), (2, 0, 0)), ((0, 2, 1), (0, 1, 1)), ((2, 1, 0), (2, 2, 0)),
         ((1, 2, 0), (0, 2, 0)), ((2, 0, 1), (2, 1, 1)), ((2, 2, 1), (1, 2, 1)))

_PINWHEEL = (((1, 0, 0), (0, 0, 0)), ((2, 1, 0), (2, 0, 0)),
             ((1, 2, 0), (2, 2, 0)), ((0, 1, 0), (0, 2, 0)),
             ((0, 0, 1), (0, 1, 1)), ((2, 0, 1), (1, 0, 1)),
             ((2, 2, 1), (2, 1, 1)), ((0, 2, 1), (1, 2, 1)),
             ((1, 1, 1), (1, 1, 0)))


def tiling_tA() -> Tiling:
    """3x3x2 tiling holding a one-dimer-per-axis trio in the low cube."""
    r = build_box(3, 3, 2)
    return Tiling.from_cell_pairs(r, _TRIO_A + _REST)


def tiling_tB() -> Tiling:
    """tiling_tA with the low-cube trio rotated to the other chirality."""
    r = build_box(3, 3, 2)
    return Tiling.from_cell_pairs(r, _TRIO_B + _REST)


def pinwheel_N1() -> Tiling:
    """One of the two flip-free 3x3x2 tilings (two pinwheel layers)."""
    r = build_box(3, 3, 2)
    return Tiling.from_cell_pairs(r, _PINWHEEL)


def pinwheel_N2() -> Tiling:
    """Mirror image of pinwheel_N1 through the z = 1/2 plane."""
    r = build_box(3, 3, 2)
    flipped = [((w[0], w[1], 1 - w[2]), (b[0], b[1], 1 - b[2]))
               for (w, b) in _PINWHEEL]
    return Tiling.from_cell_pairs(r, flipped)
