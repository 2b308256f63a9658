"""Cubiculated regions: boxes, rectangular tori, and general voxel sets.

A region is a finite set of unit cells in Z^3, checkerboard colored, together
with the face-adjacency graph of its cells (the dual graph). Tilings live in
tilings.py as perfect matchings of that graph; everything here is immutable
after construction.

Coloring convention: color(x, y, z) = +1 (black) iff x + y + z + parity is
even, with parity = 0 for boxes and tori.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Optional, Sequence

Cell = tuple[int, int, int]

#: Canonical direction order: +x, -x, +y, -y, +z, -z.
DIRECTIONS: tuple[Cell, ...] = (
    (1, 0, 0), (-1, 0, 0),
    (0, 1, 0), (0, -1, 0),
    (0, 0, 1), (0, 0, -1),
)

#: direction index -> coordinate axis (0, 1 or 2).
DIR_AXIS = (0, 0, 1, 1, 2, 2)

#: direction index -> sign of the step along its axis.
DIR_SIGN = (1, -1, 1, -1, 1, -1)

AXIS_NAMES = ("x", "y", "z")

COORD_LIMIT = 2**31 - 1


class RegionError(ValueError):
    """Rejection of a candidate region, naming the first violated condition."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


class Region:
    """An immutable cubiculated region with its dual graph.

    Do not call the constructor directly; use build_box, build_torus or
    build_voxel_region.
    """

    __slots__ = (
        "kind", "cells", "index", "colors", "dims", "periods", "parity",
        "neighbor_table", "degenerate_adjacency", "_hash",
    )

    def __init__(self, kind: str, cells: Sequence[Cell], parity: int,
                 dims: Optional[Cell] = None, periods: Optional[Cell] = None):
        self.kind = kind
        self.cells: tuple[Cell, ...] = tuple(sorted(cells))
        self.index: dict[Cell, int] = {c: i for i, c in enumerate(self.cells)}
        self.parity = parity
        self.dims = dims
        self.periods = periods
        self.colors: tuple[int, ...] = tuple(
            1 if (x + y + z + parity) % 2 == 0 else -1
            for (x, y, z) in self.cells
        )
        self.degenerate_adjacency = bool(periods) and min(periods) == 2
        self.neighbor_table = self._build_neighbors()
        self._hash = hash((kind, self.cells, parity, periods))

    # -- construction helpers -------------------------------------------

    def _build_neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        # One entry per unordered adjacent pair per axis: on a period-2 torus
        # the +axis and -axis steps reach the same cell and are recorded once,
        # under the +axis direction.
        table = []
        for cell in self.cells:
            row = []
            seen: set[tuple[int, int]] = set()
            for d in range(6):
                other = self.step(cell, d)
                if other is None:
                    continue
                j = self.index.get(other)
                if j is None:
                    continue
                key = (j, DIR_AXIS[d])
                if key in seen:
                    continue
                seen.add(key)
                row.append((j, d))
            table.append(tuple(row))
        return tuple(table)

    # -- basic queries ---------------------------------------------------

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def is_torus(self) -> bool:
        return self.kind == "torus"

    @property
    def is_box(self) -> bool:
        return self.kind == "box"

    def contains(self, cell: Cell) -> bool:
        return self.reduce(cell) in self.index

    def color(self, cell: Cell) -> int:
        x, y, z = self.reduce(cell)
        return 1 if (x + y + z + self.parity) % 2 == 0 else -1

    def reduce(self, cell: Cell) -> Cell:
        """Reduce coordinates modulo the periods (identity off the torus)."""
        if self.periods is None:
            return cell
        a, b, c = self.periods
        return (cell[0] % a, cell[1] % b, cell[2] % c)

    def step(self, cell: Cell, direction: int) -> Optional[Cell]:
        """The neighboring lattice cell in the given direction, reduced.

        Returns the coordinate triple whether or not it lies in the region;
        None is never returned for tori.
        """
        d = DIRECTIONS[direction]
        return self.reduce((cell[0] + d[0], cell[1] + d[1], cell[2] + d[2]))

    def neighbors(self, i: int) -> tuple[tuple[int, int], ...]:
        """Adjacent cell indices of cell i as (index, direction) pairs."""
        return self.neighbor_table[i]

    def boundary_faces(self) -> tuple[tuple[Cell, int], ...]:
        """Exterior unit squares as (cell, outward direction index) pairs."""
        faces = []
        for cell in self.cells:
            for d in range(6):
                other = self.step(cell, d)
                if other not in self.index:
                    faces.append((cell, d))
        return tuple(faces)

    # -- equality and serialization ---------------------------------------

    def _key(self):
        return (self.kind, self.cells, self.parity, self.periods)

    def __eq__(self, other) -> bool:
        return isinstance(other, Region) and self._key() == other._key()

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.kind == "box":
            return "Region(box %dx%dx%d)" % self.dims
        if self.kind == "torus":
            return "Region(torus %dx%dx%d)" % self.periods
        return "Region(voxels, %d cells)" % self.n_cells

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        if self.kind == "box":
            return {"kind": "box", "dims": list(self.dims)}
        if self.kind == "torus":
            return {"kind": "torus", "periods": list(self.periods)}
        return {
            "kind": "voxels",
            "cells": [list(c) for c in self.cells],
            "parity": self.parity,
        }


def build_box(L: int, M: int, N: int) -> Region:
    """The L x M x N box with cells (x, y, z), 0 <= x < L etc."""
    for v in (L, M, N):
        if not isinstance(v, int) or v < 1:
            raise RegionError("dimension", "box dimensions must be positive integers")
    if L % 2 and M % 2 and N % 2:
        raise RegionError("balance", "unbalanced region: all box dimensions are odd")
    if max(L, M, N) > COORD_LIMIT:
        raise RegionError("dimension", "box dimension exceeds coordinate range")
    cells = [(x, y, z) for x in range(L) for y in range(M) for z in range(N)]
    return Region("box", cells, parity=0, dims=(L, M, N))


def build_torus(a: int, b: int, c: int) -> Region:
    """The torus with rectangular periods (a, b, c), all even and >= 2."""
    for v in (a, b, c):
        if not isinstance(v, int) or v < 2 or v % 2:
            raise RegionError("parity", "torus periods must be even integers >= 2")
    if max(a, b, c) > COORD_LIMIT:
        raise RegionError("dimension", "torus period exceeds coordinate range")
    cells = [(x, y, z) for x in range(a) for y in range(b) for z in range(c)]
    return Region("torus", cells, parity=0, periods=(a, b, c))


def build_voxel_region(cells: Iterable[Sequence[int]], parity: int = 0) -> Region:
    """Validate an explicit cell list and build the region.

    Checks, in order: nonempty and duplicate-free input, coordinate range,
    local manifold conditions at edges and vertices, face-connectivity, and
    color balance. The first violated condition is reported via RegionError
    with a matching .condition attribute.
    """
    cell_list = [tuple(int(v) for v in c) for c in cells]
    if not cell_list:
        raise RegionError("empty", "empty region")
    cell_set = set(cell_list)
    if len(cell_set) != len(cell_list):
        raise RegionError("duplicate", "duplicate cell in region input")
    for c in cell_list:
        if len(c) != 3:
            raise RegionError("dimension", "cells must be integer 3-vectors")
        if max(abs(v) for v in c) > COORD_LIMIT:
            raise RegionError("dimension", "cell coordinate exceeds range")
    if parity not in (0, 1):
        raise RegionError("parity", "parity flag must be 0 or 1")

    bad_edge = _find_nonmanifold_edge(cell_set)
    if bad_edge is not None:
        raise RegionError(
            "non-manifold edge",
            "non-manifold edge at %r: exactly two cells touch only along it" % (bad_edge,),
        )
    bad_vertex = _find_nonmanifold_vertex(cell_set)
    if bad_vertex is not None:
        raise RegionError(
            "non-manifold vertex",
            "non-manifold vertex at %r: incident cells do not form a disk-like link" % (bad_vertex,),
        )
    if not _face_connected(cell_set):
        raise RegionError("connectivity", "region is not face-connected")
    black = sum(1 for (x, y, z) in cell_set if (x + y + z + parity) % 2 == 0)
    white = len(cell_set) - black
    if black != white:
        raise RegionError(
            "balance", "unbalanced region: %d black vs %d white cells" % (black, white)
        )
    return Region("voxels", cell_list, parity=parity)


def _edge_incidence(cell_set: set[Cell]) -> dict[tuple, list[Cell]]:
    """Map each lattice edge key to the present cells incident to it.

    An edge parallel to the axis k at transverse lattice coordinates (u, v)
    starting at height w is keyed (k, u, v, w); up to four cells share it.
    """
    incidence: dict[tuple, list[Cell]] = {}
    for (x, y, z) in cell_set:
        for k in range(3):
            t1, t2 = [ax for ax in range(3) if ax != k]
            base = (x, y, z)
            for du in (0, 1):
                for dv in (0, 1):
                    u = base[t1] + du
                    v = base[t2] + dv
                    key = (k, u, v, base[k])
                    incidence.setdefault(key, []).append((x, y, z))
    return incidence


def _find_nonmanifold_edge(cell_set: set[Cell]) -> Optional[tuple]:
    # Exactly two incident cells that disagree in both transverse coordinates
    # touch only along the edge itself: the forbidden diagonal pattern.
    for key, incident in sorted(_edge_incidence(cell_set).items()):
        if len(incident) != 2:
            continue
        a, b = incident
        if sum(1 for i in range(3) if a[i] != b[i]) == 2:
            return key
    return None


_OCTANTS = [(dx, dy, dz) for dx in (0, 1) for dy in (0, 1) for dz in (0, 1)]


def _octant_component_count(pattern: set[Cell]) -> int:
    seen: set[Cell] = set()
    count = 0
    for start in sorted(pattern):
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            cur = stack.pop()
            for axis in range(3):
                nxt = list(cur)
                nxt[axis] ^= 1
                nxt_t = tuple(nxt)
                if nxt_t in pattern and nxt_t not in seen:
                    seen.add(nxt_t)
                    stack.append(nxt_t)
    return count


def _find_nonmanifold_vertex(cell_set: set[Cell]) -> Optional[Cell]:
    """First lattice vertex whose link is not disk- or sphere-like.

    The eight cells around a vertex form octants of a 2x2x2 block; the region
    is locally a manifold at the vertex iff both the present pattern and its
    complement are face-connected (empty parts pass vacuously).
    """
    corners: set[Cell] = set()
    for (x, y, z) in cell_set:
        for dx in (0, 1):
            for dy in (0, 1):
                for dz in (0, 1):
                    corners.add((x + dx, y + dy, z + dz))
    for corner in sorted(corners):
        pattern = {
            o for o in _OCTANTS
            if (corner[0] - 1 + o[0], corner[1] - 1 + o[1], corner[2] - 1 + o[2]) in cell_set
        }
        complement = set(_OCTANTS) - pattern
        if _octant_component_count(pattern) > 1:
            return corner
        if complement and _octant_component_count(complement) > 1:
            return corner
    return None


def _face_connected(cell_set: set[Cell]) -> bool:
    start = next(iter(sorted(cell_set)))
    seen = {start}
    stack = [start]
    while stack:
        (x, y, z) = stack.pop()
        for (dx, dy, dz) in DIRECTIONS:
            nxt = (x + dx, y + dy, z + dz)
            if nxt in cell_set and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(cell_set)


def refine_region(r: Region, k: int) -> Region:
    """Subdivide every cell into 5x5x5 subcells, k times.

    Corner subcells keep the color of the original cell, so the global
    parity flag carries over unchanged.
    """
    if k < 0:
        raise ValueError("refinement count must be nonnegative")
    if k == 0:
        return r
    scale = 5 ** k
    if r.kind == "box":
        L, M, N = r.dims
        return build_box(L * scale, M * scale, N * scale)
    if r.kind == "torus":
        a, b, c = r.periods
        return build_torus(a * scale, b * scale, c * scale)
    cells = [
        (x * scale + i, y * scale + j, z * scale + l)
        for (x, y, z) in r.cells
        for i in range(scale) for j in range(scale) for l in range(scale)
    ]
    return Region("voxels", cells, parity=r.parity)


def region_from_json(text: str) -> Region:
    return region_from_dict(json.loads(text))


def region_from_dict(data: dict) -> Region:
    kind = data.get("kind")
    if kind == "box":
        return build_box(*data["dims"])
    if kind == "torus":
        return build_torus(*data["periods"])
    if kind == "voxels":
        return build_voxel_region(data["cells"], parity=data.get("parity", 0))
    raise ValueError("unknown region kind: %r" % (kind,))
