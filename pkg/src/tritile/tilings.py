"""Tilings as perfect matchings of a region's dual graph.

A domino is stored as an oriented dimer from its white cell to its black
cell. On tori the direction field records the chosen lattice representative
of the step (the +axis step for degenerate period-2 adjacencies), which keeps
refinement and winding computations well defined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .regions import AXIS_NAMES, Cell, Region, refine_region, region_from_dict

_refine_region_cached = lru_cache(maxsize=32)(refine_region)

_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _M64
    z = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _M64
    z = (z ^ (z >> 27)) * 0x94D649BB133111EB & _M64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class Dimer:
    """One domino: white cell, black cell, and the unit step white -> black."""

    white: Cell
    black: Cell
    direction: Cell

    @property
    def axis(self) -> int:
        for k in range(3):
            if self.direction[k]:
                return k
        raise ValueError("degenerate dimer direction")

    @property
    def sign(self) -> int:
        """+1 when the black cell is ahead of the white cell along the axis."""
        return self.direction[self.axis]

    def cells(self) -> tuple[Cell, Cell]:
        return (self.white, self.black)


def _direction(region: Region, white: Cell, black: Cell) -> Cell:
    vec = [0, 0, 0]
    axis = None
    for k in range(3):
        delta = black[k] - white[k]
        if region.periods is not None:
            delta %= region.periods[k]
        if delta == 0:
            continue
        if axis is not None:
            raise ValueError("cells %r and %r are not adjacent" % (white, black))
        axis = k
        if region.periods is None:
            if delta not in (1, -1):
                raise ValueError("cells %r and %r are not adjacent" % (white, black))
            vec[k] = delta
        else:
            p = region.periods[k]
            if delta == 1:
                vec[k] = 1
            elif delta == p - 1:
                vec[k] = -1
            else:
                raise ValueError("cells %r and %r are not adjacent" % (white, black))
    if axis is None:
        raise ValueError("cells %r and %r are not adjacent" % (white, black))
    return tuple(vec)


class Tiling:
    """An immutable perfect matching of a region's cells."""

    __slots__ = ("region", "pairs", "_mate", "_dimers", "_hash64", "_steps")

    def __init__(self, region: Region, pairs: Iterable[tuple[int, int]]):
        self.region = region
        self.pairs: tuple[tuple[int, int], ...] = tuple(sorted(pairs))
        self._mate: Optional[tuple[int, ...]] = None
        self._dimers: Optional[tuple[Dimer, ...]] = None
        self._hash64: Optional[int] = None
        self._steps: Optional[tuple[Cell, ...]] = None

    @classmethod
    def _from_mate(cls, region: Region, mate: Sequence[int]) -> "Tiling":
        colors = region.colors
        pairs = [
            (i, mate[i]) for i in range(len(mate)) if colors[i] == -1
        ]
        t = cls(region, pairs)
        t._mate = tuple(mate)
        return t

    @classmethod
    def from_cell_pairs(cls, region: Region,
                        cell_pairs: Iterable[tuple[Sequence[int], Sequence[int]]]) -> "Tiling":
        """Build and validate a tiling from (cell, cell) pairs in any order."""
        mate = [-1] * region.n_cells
        pairs = []
        for a, b in cell_pairs:
            ca = region.reduce(tuple(int(v) for v in a))
            cb = region.reduce(tuple(int(v) for v in b))
            for c in (ca, cb):
                if c not in region.index:
                    raise ValueError("cell %r is not in the region" % (c,))
            if region.color(ca) == -1:
                white, black = ca, cb
            else:
                white, black = cb, ca
            if region.color(white) != -1 or region.color(black) != 1:
                raise ValueError("dimer %r-%r joins same-color cells" % (ca, cb))
            _direction(region, white, black)  # adjacency check
            wi, bi = region.index[white], region.index[black]
            for i in (wi, bi):
                if mate[i] != -1:
                    raise ValueError("cell covered twice: %r" % (region.cells[i],))
            mate[wi] = bi
            mate[bi] = wi
            pairs.append((wi, bi))
        for i, m in enumerate(mate):
            if m == -1:
                raise ValueError("cell uncovered: %r" % (region.cells[i],))
        t = cls(region, pairs)
        t._mate = tuple(mate)
        return t

    # -- derived views ----------------------------------------------------

    @property
    def mate(self) -> tuple[int, ...]:
        if self._mate is None:
            mate = [-1] * self.region.n_cells
            for wi, bi in self.pairs:
                mate[wi] = bi
                mate[bi] = wi
            self._mate = tuple(mate)
        return self._mate

    @property
    def dimers(self) -> tuple[Dimer, ...]:
        if self._dimers is None:
            cells = self.region.cells
            self._dimers = tuple(
                Dimer(cells[wi], cells[bi], _direction(self.region, cells[wi], cells[bi]))
                for wi, bi in self.pairs
            )
        return self._dimers

    @property
    def steps(self) -> tuple[Cell, ...]:
        """Per cell index, the geometric unit step toward the cell's partner.

        Along axes of period 2 the doubled adjacency is lifted to the
        non-wrapping edge (the raw coordinate delta), regardless of the
        stored +axis direction representative: windings, flux, and surface
        sides all read this field, and only the non-wrapping lift keeps
        them invariant under flips and trits on degenerate tori.
        """
        if self._steps is None:
            periods = self.region.periods
            steps: list[Cell] = [None] * self.region.n_cells  # type: ignore
            for d, (wi, bi) in zip(self.dimers, self.pairs):
                step = list(d.direction)
                if periods is not None and periods[d.axis] == 2:
                    step[d.axis] = d.black[d.axis] - d.white[d.axis]
                vx, vy, vz = step
                steps[wi] = (vx, vy, vz)
                steps[bi] = (-vx, -vy, -vz)
            self._steps = tuple(steps)
        return self._steps

    def dimer_at(self, cell: Cell) -> Dimer:
        region = self.region
        i = region.index[region.reduce(cell)]
        j = self.mate[i]
        wi, bi = (i, j) if region.colors[i] == -1 else (j, i)
        w, b = region.cells[wi], region.cells[bi]
        return Dimer(w, b, _direction(region, w, b))

    @property
    def hash64(self) -> int:
        """Order-independent 64-bit canonical hash (sorted fold of dimer codes)."""
        if self._hash64 is None:
            n = self.region.n_cells
            h = _splitmix64(n)
            for wi, bi in self.pairs:
                h = _splitmix64(h ^ _splitmix64(wi * n + bi))
            self._hash64 = h
        return self._hash64

    def validate(self) -> None:
        region = self.region
        covered = [0] * region.n_cells
        for wi, bi in self.pairs:
            covered[wi] += 1
            covered[bi] += 1
            if region.colors[wi] != -1 or region.colors[bi] != 1:
                raise ValueError("mis-colored dimer (%d, %d)" % (wi, bi))
            if bi not in [j for j, _ in region.neighbors(wi)]:
                raise ValueError("non-adjacent dimer (%d, %d)" % (wi, bi))
        for i, c in enumerate(covered):
            if c > 1:
                raise ValueError("cell covered twice: %r" % (region.cells[i],))
            if c == 0:
                raise ValueError("cell uncovered: %r" % (region.cells[i],))

    def replace(self, remove: Iterable[Dimer], insert: Iterable[Dimer]) -> "Tiling":
        index = self.region.index
        removed_pairs = {
            (index[d.white], index[d.black]) for d in remove
        }
        pairs = [p for p in self.pairs if p not in removed_pairs]
        if len(pairs) != len(self.pairs) - len(removed_pairs):
            raise ValueError("stale move: a removed dimer is absent from the tiling")
        for d in insert:
            pairs.append((index[d.white], index[d.black]))
        t = Tiling(self.region, pairs)
        return t

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tiling)
            and self.region == other.region
            and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return self.hash64

    def __repr__(self) -> str:
        return "Tiling(%r, %d dimers, hash %016x)" % (
            self.region, len(self.pairs), self.hash64)


def base_tiling(region: Region, axis) -> Tiling:
    """The brick tiling along an axis: all dimers parallel, offsets (2i, 2i+1).

    This is the flux-zero, twist-zero reference tiling.
    """
    k = _axis_index(axis)
    if region.kind == "box":
        extent = region.dims[k]
    elif region.kind == "torus":
        extent = region.periods[k]
    else:
        raise ValueError("base tiling requires a box or torus region")
    if extent % 2:
        raise ValueError("odd extent along axis %s" % AXIS_NAMES[k])
    mate = [-1] * region.n_cells
    for i, cell in enumerate(region.cells):
        if cell[k] % 2 == 0:
            other = list(cell)
            other[k] += 1
            j = region.index[tuple(other)]
            mate[i] = j
            mate[j] = i
    return Tiling._from_mate(region, mate)


def _axis_index(axis) -> int:
    if axis in (0, 1, 2):
        return axis
    if axis in AXIS_NAMES:
        return AXIS_NAMES.index(axis)
    raise ValueError("axis must be one of x, y, z")


def enumerate_tilings(region: Region,
                      neighbor_order: Optional[Sequence[int]] = None) -> Iterator[Tiling]:
    """All tilings of the region, exactly once, in a canonical order.

    Depth-first backtracking on the lowest-indexed uncovered cell, branching
    over its neighbors in the canonical +x,-x,+y,-y,+z,-z order. The stream is
    deterministic, so a consumer can re-run and skip a prefix to resume.
    neighbor_order, a permutation of range(6), scrambles the branching order
    (the emitted set is the same; used to test order independence).
    """
    order = tuple(neighbor_order) if neighbor_order is not None else tuple(range(6))
    if sorted(order) != list(range(6)):
        raise ValueError("neighbor_order must be a permutation of range(6)")
    n = region.n_cells
    if n == 0 or n % 2:
        return
    rank = {d: r for r, d in enumerate(order)}
    nbrs = tuple(
        tuple(j for _, j in sorted((rank[d], j) for j, d in row))
        for row in region.neighbor_table
    )
    mate = [-1] * n
    frames: list[tuple[int, int]] = []
    i, pos = 0, 0
    while True:
        found = False
        row = nbrs[i]
        while pos < len(row):
            j = row[pos]
            pos += 1
            if mate[j] == -1:
                mate[i] = j
                mate[j] = i
                frames.append((i, pos))
                found = True
                break
        if found:
            k = i + 1
            while k < n and mate[k] != -1:
                k += 1
            if k == n:
                yield Tiling._from_mate(region, mate)
                i, pos = frames.pop()
                j = mate[i]
                mate[i] = mate[j] = -1
            else:
                i, pos = k, 0
        else:
            if not frames:
                return
            i, pos = frames.pop()
            j = mate[i]
            mate[i] = mate[j] = -1


def count_tilings(region: Region) -> int:
    return sum(1 for _ in enumerate_tilings(region))


@dataclass(frozen=True)
class Cycle:
    """One closed walk of a difference cycle system.

    cells[m] -> cells[m+1] is traversed with the unit vector steps[m];
    sources[m] is 1 when that edge is a dimer of t1 (walked white to black)
    and 0 when it is a dimer of t0 (walked black to white).
    """

    cells: tuple[Cell, ...]
    steps: tuple[Cell, ...]
    sources: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return len(self.cells) == 2

    def reversed(self) -> "Cycle":
        n = len(self.cells)
        cells = (self.cells[0],) + tuple(self.cells[:0:-1])
        steps = tuple(
            tuple(-v for v in self.steps[(m - 1) % n]) for m in range(n)
        )
        # reversing the walk swaps the roles of t1 and t0
        sources = tuple(1 - self.sources[(m - 1) % n] for m in range(n))
        return Cycle(cells, steps, sources)

    def winding(self, region: Region) -> Cell:
        """Signed wrap crossings per axis (the H1 class on a torus)."""
        if region.periods is None:
            return (0, 0, 0)
        w = [0, 0, 0]
        for cell, step in zip(self.cells, self.steps):
            for k in range(3):
                if step[k] == 1 and cell[k] == region.periods[k] - 1:
                    w[k] += 1
                elif step[k] == -1 and cell[k] == 0:
                    w[k] -= 1
        return tuple(w)


class CycleSystem:
    """The difference t1 - t0 decomposed into disjoint oriented cycles."""

    __slots__ = ("region", "cycles")

    def __init__(self, region: Region, cycles: Sequence[Cycle]):
        self.region = region
        self.cycles = tuple(cycles)

    @property
    def nontrivial(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if not c.trivial)

    @property
    def trivial_count(self) -> int:
        return sum(1 for c in self.cycles if c.trivial)

    def winding(self) -> Cell:
        total = [0, 0, 0]
        for c in self.cycles:
            w = c.winding(self.region)
            for k in range(3):
                total[k] += w[k]
        return tuple(total)


def diff_cycles(t1: Tiling, t0: Tiling) -> CycleSystem:
    """Decompose t1 union reversed t0 into disjoint cycles.

    From a white cell the walk follows the t1 dimer; from a black cell it
    follows the t0 dimer backwards. Cycles are reported starting at their
    lowest cell index, in order of that index; shared dimers appear as
    trivial length-2 cycles.
    """
    if t1.region != t0.region:
        raise ValueError("tilings belong to different regions")
    region = t1.region
    n = region.n_cells
    colors = region.colors
    visited = [False] * n
    cycles = []
    for start in range(n):
        if visited[start]:
            continue
        cells: list[Cell] = []
        steps: list[Cell] = []
        sources: list[int] = []
        cur = start
        while not visited[cur]:
            visited[cur] = True
            cells.append(region.cells[cur])
            if colors[cur] == -1:
                steps.append(t1.steps[cur])
                sources.append(1)
                cur = t1.mate[cur]
            else:
                steps.append(t0.steps[cur])
                sources.append(0)
                cur = t0.mate[cur]
        cycles.append(Cycle(tuple(cells), tuple(steps), tuple(sources)))
    return CycleSystem(region, cycles)


def refine_tiling(t: Tiling, k: int) -> Tiling:
    """The 5^k-fold refinement: every dimer becomes 125^k parallel dimers.

    Each original domino refines to a brick of two scale^3 blocks; along the
    dimer axis every cross-section column admits exactly one parallel
    tiling, pairing cells (2m, 2m+1) counted from the white end.
    """
    if k < 0:
        raise ValueError("refinement count must be nonnegative")
    if k == 0:
        return t
    scale = 5 ** k
    region2 = _refine_region_cached(t.region, k)
    periods2 = region2.periods
    pairs: list[tuple[Cell, Cell]] = []
    periods = t.region.periods
    for d in t.dimers:
        axis = d.axis
        sign = d.sign
        if periods is not None and periods[axis] == 2:
            # non-wrapping lift on degenerate axes, matching Tiling.steps
            sign = d.black[axis] - d.white[axis]
        base = [c * scale for c in d.white]
        u, v = [ax for ax in range(3) if ax != axis]
        for du in range(scale):
            for dv in range(scale):
                for m in range(scale):
                    cell_a = list(base)
                    cell_a[u] += du
                    cell_a[v] += dv
                    cell_b = list(cell_a)
                    if sign > 0:
                        cell_a[axis] = base[axis] + 2 * m
                        cell_b[axis] = base[axis] + 2 * m + 1
                    else:
                        cell_a[axis] = base[axis] + scale - 1 - 2 * m
                        cell_b[axis] = base[axis] + scale - 2 - 2 * m
                    if periods2 is not None:
                        p = periods2[axis]
                        cell_a[axis] %= p
                        cell_b[axis] %= p
                    pairs.append((tuple(cell_a), tuple(cell_b)))
    return Tiling.from_cell_pairs(region2, pairs)


def serialize_tiling(t: Tiling) -> str:
    return json.dumps(tiling_to_dict(t), sort_keys=True)


def tiling_to_dict(t: Tiling) -> dict:
    return {
        "region": t.region.to_dict(),
        "dimers": [[list(d.white), list(d.black)] for d in t.dimers],
    }


def deserialize_tiling(text: str, region: Optional[Region] = None) -> Tiling:
    return tiling_from_dict(json.loads(text), region)


def tiling_from_dict(data: dict, region: Optional[Region] = None) -> Tiling:
    embedded = region_from_dict(data["region"]) if "region" in data else None
    if region is None:
        region = embedded
        if region is None:
            raise ValueError("no region given and none embedded in the tiling")
    elif embedded is not None and embedded != region:
        raise ValueError("embedded region disagrees with the given region")
    return Tiling.from_cell_pairs(region, [tuple(p) for p in data["dimers"]])
