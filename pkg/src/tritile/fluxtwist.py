"""Flux, discrete surfaces, flux through surfaces, modulus, and twist.

Surfaces live in the dual complex: their vertices are cell centers, drawn
here in doubled coordinates so that a unit square normal to axis k has an
even k-coordinate and odd coordinates along the two tangent axes. Squares
are oriented; the boundary operator follows the right-hand rule around the
normal, and a surface is accepted only when shared edges cancel, so its
orientation is coherent.

The combinatorial twist of a box tiling is a sum of quarter turns over
dimer pairs: a dimer d' inside the open shadow of d along the chosen axis
contributes det[v(d'), v(d), e_axis] / 4. Only pairs along the two other
axes contribute, which the implementation exploits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .regions import (
    AXIS_NAMES, Cell, DIR_AXIS, DIR_SIGN, DIRECTIONS, Region,
)
from .tilings import (
    Tiling, base_tiling, diff_cycles, enumerate_tilings, _axis_index,
)
from .moves import move_graph, bfs_trit_labeling

_NORMAL_TO_NAME = {(0, 1): "+x", (0, -1): "-x", (1, 1): "+y",
                   (1, -1): "-y", (2, 1): "+z", (2, -1): "-z"}
_NAME_TO_NORMAL = {v: k for k, v in _NORMAL_TO_NAME.items()}

#: (tangent axis pair (u, v) with (u, v, k) cyclic) per normal axis k
_TANGENT_AXES = ((1, 2), (2, 0), (0, 1))


@dataclass(frozen=True)
class Square:
    """One oriented unit square of the dual complex.

    center2 is the square's center in doubled dual coordinates (even along
    the normal axis, odd along the tangent axes); orientation is the sign of
    the normal along its axis.
    """

    center2: Cell
    axis: int
    orientation: int

    @property
    def normal(self) -> str:
        return _NORMAL_TO_NAME[(self.axis, self.orientation)]


def _dir_index(axis: int, sign: int) -> int:
    return 2 * axis + (0 if sign > 0 else 1)


class DiscreteSurface:
    """An embedded, coherently oriented discrete surface in a region's dual."""

    def __init__(self, region: Region, squares: Iterable[Square]):
        self.region = region
        self._period2 = None
        if region.periods is not None:
            self._period2 = tuple(2 * p for p in region.periods)
        normalized = []
        by_pos: dict[Cell, Square] = {}
        for sq in squares:
            c2 = self._norm2(sq.center2)
            for k in range(3):
                want_even = (k == sq.axis)
                if (c2[k] % 2 == 0) != want_even:
                    raise ValueError(
                        "square center %r does not match normal axis %s"
                        % (sq.center2, AXIS_NAMES[sq.axis]))
            if sq.orientation not in (1, -1):
                raise ValueError("square orientation must be +1 or -1")
            if c2 in by_pos:
                raise ValueError("duplicate square at %r" % (c2,))
            sq = Square(c2, sq.axis, sq.orientation)
            by_pos[c2] = sq
            normalized.append(sq)
        self.squares: tuple[Square, ...] = tuple(normalized)
        self._by_pos = by_pos
        self._build()

    # -- doubled-coordinate helpers --------------------------------------

    def _norm2(self, p2: Sequence[int]) -> Cell:
        if self._period2 is None:
            return tuple(p2)
        return tuple(v % p for v, p in zip(p2, self._period2))

    def _corner_cell(self, corner2: Cell) -> Cell:
        return self.region.reduce((corner2[0] // 2, corner2[1] // 2, corner2[2] // 2))

    def _square_corners(self, sq: Square) -> list[Cell]:
        """Corner cycle, counterclockwise as seen from the normal side."""
        u, v = _TANGENT_AXES[sq.axis]
        cycle = ((-1, -1), (1, -1), (1, 1), (-1, 1))
        if sq.orientation < 0:
            cycle = cycle[::-1]
        corners = []
        for su, sv in cycle:
            p = list(sq.center2)
            p[u] += su
            p[v] += sv
            corners.append(self._norm2(p))
        return corners

    def _build(self) -> None:
        counts: dict[tuple[Cell, int], int] = {}
        vertex_cells: set[Cell] = set()
        for sq in self.squares:
            corners = self._square_corners(sq)
            for c2 in corners:
                cell = self._corner_cell(c2)
                if cell not in self.region.index:
                    raise ValueError("square corner %r is outside the region" % (cell,))
                vertex_cells.add(cell)
            for m in range(4):
                a, b = corners[m], corners[(m + 1) % 4]
                diridx = self._edge_direction(sq, m)
                key = (a, diridx)
                if key in counts:
                    raise ValueError(
                        "incoherent orientation: directed edge %r appears twice" % (key,))
                counts[key] = 1
                del b
        boundary = []
        for (a, diridx) in counts:
            u2 = self._step2(a, diridx)
            if (u2, diridx ^ 1) not in counts:
                boundary.append((a, diridx))
        self.boundary_edges: tuple[tuple[Cell, int], ...] = tuple(sorted(boundary))
        bverts = set()
        for (a, diridx) in self.boundary_edges:
            bverts.add(self._corner_cell(a))
            bverts.add(self._corner_cell(self._step2(a, diridx)))
        self.boundary_vertices: tuple[Cell, ...] = tuple(sorted(bverts))
        self.interior_vertices: tuple[Cell, ...] = tuple(
            sorted(c for c in vertex_cells if c not in bverts))
        self._boundary_set = set(self.boundary_edges)
        self._edge_set = {self._canon_edge(a, d) for (a, d) in counts}
        self._interior_set = set(self.interior_vertices)

    def _edge_direction(self, sq: Square, m: int) -> int:
        # direction of the step from corner m to corner m+1, read off the
        # corner cycle before normalization
        u, v = _TANGENT_AXES[sq.axis]
        cycle = ((-1, -1), (1, -1), (1, 1), (-1, 1))
        if sq.orientation < 0:
            cycle = cycle[::-1]
        du = cycle[(m + 1) % 4][0] - cycle[m][0]
        dv = cycle[(m + 1) % 4][1] - cycle[m][1]
        if du:
            return _dir_index(u, du)
        return _dir_index(v, dv)

    def _step2(self, p2: Cell, diridx: int) -> Cell:
        d = DIRECTIONS[diridx]
        return self._norm2((p2[0] + 2 * d[0], p2[1] + 2 * d[1], p2[2] + 2 * d[2]))

    def _canon_edge(self, p2: Cell, diridx: int) -> tuple[Cell, int]:
        rev = (self._step2(p2, diridx), diridx ^ 1)
        return min((p2, diridx), rev)

    # -- queries -----------------------------------------------------------

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges

    def has_square_at(self, center2: Sequence[int]) -> bool:
        return self._norm2(center2) in self._by_pos

    def square_at(self, center2: Sequence[int]) -> Optional[Square]:
        return self._by_pos.get(self._norm2(center2))

    def edge_in_surface(self, cell: Cell, axis: int, sign: int) -> bool:
        """Is the dual edge from the cell along the signed axis a square side?"""
        v2 = self._norm2(tuple(2 * c for c in cell))
        for m in range(3):
            if m == axis:
                continue
            l = 3 - axis - m
            for sl in (1, -1):
                p = list(v2)
                p[axis] += sign
                p[l] += sl
                if self.has_square_at(p):
                    return True
        return False

    def edge_on_boundary(self, cell: Cell, axis: int, sign: int) -> bool:
        v2 = self._norm2(tuple(2 * c for c in cell))
        key = (v2, _dir_index(axis, sign))
        if key in self._boundary_set:
            return True
        rev = (self._step2(v2, key[1]), key[1] ^ 1)
        return rev in self._boundary_set

    def to_list(self) -> list[dict]:
        return [
            {"center": list(sq.center2), "normal": sq.normal}
            for sq in self.squares
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), sort_keys=True)


def surface_from_json(text: str, region: Region) -> DiscreteSurface:
    return surface_from_list(json.loads(text), region)


def surface_from_list(items: Sequence[dict], region: Region) -> DiscreteSurface:
    squares = []
    for item in items:
        axis, orientation = _NAME_TO_NORMAL[item["normal"]]
        squares.append(Square(tuple(item["center"]), axis, orientation))
    return DiscreteSurface(region, squares)


def vertex_flow(v: Cell, t: Tiling, s: DiscreteSurface) -> int:
    """color(v) times the side of v's dimer: +1 above S, 0 in S, -1 below.

    v must be an interior vertex of s; the side of the matched neighbor is
    found by flooding the eight octants around v, moving only between
    octants not separated by a square of s, starting from the octants that
    contain the dimer ray.
    """
    region = t.region
    v = region.reduce(v)
    if v not in s._interior_set:
        raise ValueError("vertex %r is not an interior vertex of the surface" % (v,))
    i = region.index[v]
    step = t.steps[i]
    axis = 0 if step[0] else (1 if step[1] else 2)
    sign = step[axis]
    if s.edge_in_surface(v, axis, sign):
        return 0
    v2 = s._norm2(tuple(2 * c for c in v))

    def blocked(o: tuple[int, int, int], m: int) -> bool:
        u, w = [ax for ax in range(3) if ax != m]
        p = list(v2)
        p[u] += o[u]
        p[w] += o[w]
        return s.has_square_at(p)

    start = [o for o in _octants() if o[axis] == sign]
    flood = set(start)
    stack = list(start)
    while stack:
        o = stack.pop()
        for m in range(3):
            if blocked(o, m):
                continue
            o2 = tuple(-v_ if ax == m else v_ for ax, v_ in enumerate(o))
            if o2 not in flood:
                flood.add(o2)
                stack.append(o2)
    above = below = False
    for k in range(3):
        u, w = _TANGENT_AXES[k]
        for su in (1, -1):
            for sw in (1, -1):
                p = list(v2)
                p[u] += su
                p[w] += sw
                sq = s.square_at(p)
                if sq is None:
                    continue
                o_pos = [0, 0, 0]
                o_pos[u], o_pos[w] = su, sw
                o_pos[k] = sq.orientation
                o_neg = list(o_pos)
                o_neg[k] = -sq.orientation
                if tuple(o_pos) in flood:
                    above = True
                if tuple(o_neg) in flood:
                    below = True
    if above and below:
        raise ValueError("surface does not separate the octants at %r" % (v,))
    if not above and not below:
        raise ValueError("no surface square found around interior vertex %r" % (v,))
    return region.color(v) * (1 if above else -1)


def _octants() -> list[tuple[int, int, int]]:
    return [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]


def flux_through_surface(t: Tiling, s: DiscreteSurface) -> int:
    """phi(t; S): the color-weighted flow of t through the surface.

    Requires t to be tangent to s at the boundary: the dimer at every
    boundary vertex must run along a boundary edge. Vacuous for closed
    surfaces.
    """
    region = t.region
    for v in s.boundary_vertices:
        i = region.index[v]
        step = t.steps[i]
        axis = 0 if step[0] else (1 if step[1] else 2)
        if not s.edge_on_boundary(v, axis, step[axis]):
            raise ValueError(
                "tiling is not tangent to the surface boundary at vertex %r" % (v,))
    return sum(vertex_flow(v, t, s) for v in s.interior_vertices)


def closed_box_surface(r: Region, corner: Sequence[int], dims: Sequence[int]) -> DiscreteSurface:
    """The closed boundary surface of a dual sub-box, outward normals.

    corner and dims are in dual-vertex (cell center) coordinates: the box
    spans corner .. corner + dims along each axis and all of its dual
    vertices must be cells of the region.
    """
    corner = tuple(int(c) for c in corner)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError("sub-box dimensions must be positive")
    if r.periods is not None and any(d >= p for d, p in zip(dims, r.periods)):
        raise ValueError("sub-box does not embed in the torus")
    for x in range(corner[0], corner[0] + dims[0] + 1):
        for y in range(corner[1], corner[1] + dims[1] + 1):
            for z in range(corner[2], corner[2] + dims[2] + 1):
                if not r.contains((x, y, z)):
                    raise ValueError(
                        "sub-box touches the region boundary: dual vertex %r missing"
                        % ((x, y, z),))
    squares = []
    for k in range(3):
        u, v = _TANGENT_AXES[k]
        for level, orientation in ((corner[k], -1), (corner[k] + dims[k], 1)):
            for i in range(dims[u]):
                for j in range(dims[v]):
                    c2 = [0, 0, 0]
                    c2[k] = 2 * level
                    c2[u] = 2 * (corner[u] + i) + 1
                    c2[v] = 2 * (corner[v] + j) + 1
                    squares.append(Square(tuple(c2), k, orientation))
    return DiscreteSurface(r, squares)


def cutting_surface(r: Region, axis, level: Union[int, float]) -> DiscreteSurface:
    """The closed cutting torus normal to an axis at the given dual plane.

    level is the cell-layer coordinate of the plane (a half-integer primal
    offset c + 1/2 corresponds to integer level c); the surface consists of
    every dual square in that plane, normals along +axis.
    """
    if r.periods is None:
        raise ValueError("cutting surfaces require a torus region")
    k = _axis_index(axis)
    c = int(np.floor(level)) % r.periods[k]
    u, v = _TANGENT_AXES[k]
    squares = []
    for i in range(r.periods[u]):
        for j in range(r.periods[v]):
            c2 = [0, 0, 0]
            c2[k] = 2 * c
            c2[u] = 2 * i + 1
            c2[v] = 2 * j + 1
            squares.append(Square(tuple(c2), k, 1))
    return DiscreteSurface(r, squares)


class FluxVector:
    """The flux of a tiling: its difference class against the base tiling.

    Empty for boxes; on tori, the three winding numbers of the difference
    cycle system against the x-axis brick tiling, one per cutting direction.
    Keeps the tiling it was computed from so the modulus can evaluate flux
    through generator surfaces.
    """

    __slots__ = ("components", "region", "witness")

    def __init__(self, components: Sequence[int], region: Region, witness: Tiling):
        self.components = tuple(components)
        self.region = region
        self.witness = witness

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> int:
        return self.components[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, FluxVector):
            return self.region == other.region and self.components == other.components
        if isinstance(other, tuple):
            return self.components == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.region, self.components))

    def __repr__(self) -> str:
        return "FluxVector%r" % (self.components,)


def flux(t: Tiling) -> FluxVector:
    """Flux(t): zero-length for boxes, three winding numbers for tori."""
    region = t.region
    if region.kind == "box":
        return FluxVector((), region, t)
    if region.kind == "torus":
        system = diff_cycles(t, base_tiling(region, 0))
        return FluxVector(system.winding(), region, t)
    raise ValueError("flux unsupported for this region kind")


def modulus(f: FluxVector, r: Optional[Region] = None) -> int:
    """gcd of |phi| over the region's stored cutting surfaces; 0 for boxes.

    m = 0 encodes a twist valued in Z; m > 0 a twist valued in Z/mZ.
    """
    if r is None:
        r = f.region
    elif r != f.region:
        raise ValueError("flux vector belongs to a different region")
    if r.kind == "box":
        return 0
    if r.kind == "torus":
        m = 0
        for k in range(3):
            phi = flux_through_surface(f.witness, cutting_surface(r, k, 0))
            m = gcd(m, abs(phi))
        return m
    raise ValueError("flux unsupported for this region kind")


def twist(t: Tiling, axis) -> int:
    """The combinatorial twist Tw_axis of a box tiling.

    Quarter turns are accumulated exactly in integers; only dimer pairs along
    the two axes other than the twist axis interact, via the open-shadow
    crossing rule. The quarter total is asserted to be divisible by 4.
    """
    if not t.region.is_box:
        raise ValueError("combinatorial twist requires a box region")
    k = _axis_index(axis)
    mins, sigs, axes = _dimer_arrays(t)
    i, j = _TANGENT_AXES[k]
    A = mins[axes == i]
    sa = sigs[axes == i]
    B = mins[axes == j]
    sb = sigs[axes == j]
    if len(A) == 0 or len(B) == 0:
        return 0
    bi = B[:, i][None, :]
    ai = A[:, i][:, None]
    aj = A[:, j][:, None]
    bj = B[:, j][None, :]
    crossing = ((bi == ai) | (bi == ai + 1)) & ((aj == bj) | (aj == bj + 1))
    dk = np.sign(B[:, k][None, :] - A[:, k][:, None])
    quarters = -int(np.sum(crossing * dk * sa[:, None] * sb[None, :]))
    if quarters % 4:
        raise RuntimeError(
            "twist internal consistency failure: quarter total %d for %d x-dimers,"
            " %d y-dimers around axis %s" % (quarters, len(A), len(B), AXIS_NAMES[k]))
    return quarters // 4


def _dimer_arrays(t: Tiling) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = len(t.pairs)
    mins = np.empty((n, 3), dtype=np.int64)
    sigs = np.empty(n, dtype=np.int64)
    axes = np.empty(n, dtype=np.int64)
    for idx, d in enumerate(t.dimers):
        w, b = d.white, d.black
        mins[idx] = (min(w[0], b[0]), min(w[1], b[1]), min(w[2], b[2]))
        axes[idx] = d.axis
        sigs[idx] = d.sign
    return mins, sigs, axes


@lru_cache(maxsize=4)
def _enumerated_graph(region: Region):
    return move_graph(list(enumerate_tilings(region)), "flip+trit")


def relative_twist(t1: Tiling, t0: Tiling) -> int:
    """TW(t1; t0): twist difference for boxes, BFS trit label on small tori.

    Requires flux(t1) == flux(t0). On a torus the value is reduced modulo the
    modulus of the common flux class when that modulus is nonzero.
    """
    if t1.region != t0.region:
        raise ValueError("tilings belong to different regions")
    region = t1.region
    if region.is_box:
        return twist(t1, 0) - twist(t0, 0)
    f1, f0 = flux(t1), flux(t0)
    if f1 != f0:
        raise ValueError("tilings have different flux: %r vs %r"
                         % (f1.components, f0.components))
    g = _enumerated_graph(region)
    if t1.hash64 not in g.tilings or t0.hash64 not in g.tilings:
        raise ValueError("tiling missing from the enumerated move graph")
    labels, consistent = bfs_trit_labeling(g, t0.hash64)
    if not consistent:
        raise ValueError("inconsistent trit labeling on this region")
    if t1.hash64 not in labels:
        raise ValueError("tilings are not connected by flips and trits at this scale")
    value = labels[t1.hash64]
    m = modulus(f0)
    return value % m if m else value


def surface_predicates(t0: Tiling, t1: Tiling, s: DiscreteSurface) -> dict:
    """The balanced / zero-flux / tangent predicates of a Seifert surface.

    s must be a Seifert surface candidate for (t0, t1): its boundary must
    equal the nontrivial cycles of t1 - t0 (as undirected edge sets).
    """
    system = diff_cycles(t1, t0)
    cycle_edges = set()
    for cyc in system.nontrivial:
        n = len(cyc.cells)
        for m in range(n):
            cell = cyc.cells[m]
            step = cyc.steps[m]
            axis = 0 if step[0] else (1 if step[1] else 2)
            v2 = s._norm2((2 * cell[0], 2 * cell[1], 2 * cell[2]))
            cycle_edges.add(s._canon_edge(v2, _dir_index(axis, step[axis])))
    surf_edges = {s._canon_edge(a, d) for (a, d) in s.boundary_edges}
    if cycle_edges != surf_edges:
        missing = sorted(cycle_edges - surf_edges)
        extra = sorted(surf_edges - cycle_edges)
        raise ValueError(
            "surface boundary does not match the nontrivial difference cycles:"
            " missing %r, extra %r" % (missing[:4], extra[:4]))

    colors = [t0.region.color(v) for v in s.interior_vertices]
    balanced = sum(colors) == 0
    zero_flux = (flux_through_surface(t0, s) == 0
                 and flux_through_surface(t1, s) == 0)
    tangent0 = _tangent_to_surface(t0, s)
    tangent1 = _tangent_to_surface(t1, s)
    assert tangent0 == tangent1, "tangency must not depend on the side of the pair"
    if tangent0:
        assert balanced and zero_flux, "a tangent surface is balanced and zero-flux"
    return {"balanced": balanced, "zero_flux": zero_flux, "tangent": tangent0}


def _tangent_to_surface(t: Tiling, s: DiscreteSurface) -> bool:
    region = t.region
    vertices = set(s.interior_vertices) | set(s.boundary_vertices)
    for v in vertices:
        step = t.steps[region.index[v]]
        axis = 0 if step[0] else (1 if step[1] else 2)
        v2 = s._norm2((2 * v[0], 2 * v[1], 2 * v[2]))
        if s._canon_edge(v2, _dir_index(axis, step[axis])) not in s._edge_set:
            return False
    return True
