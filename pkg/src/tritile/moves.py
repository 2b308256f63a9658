"""Flips, trits, move graphs, and the signed trit labeling.

A flip exchanges two parallel dimers filling a 2x2x1 slab. A trit exchanges
three pairwise orthogonal dimers inside a 2x2x2 cube whose two uncovered
cells are antipodal; it carries a sign. The sign convention is calibrated so
that applying a positive trit raises the combinatorial twist by exactly 1:
writing the removed trio's offsets relative to the cube anchor, the move is
positive iff the y-offset of the x-dimer, the z-offset of the y-dimer and
the x-offset of the z-dimer sum to an odd number. That quantity is invariant
under translations and proper rotations, so the sign is well defined on tori
as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .regions import Cell, DIR_AXIS, Region
from .tilings import Dimer, Tiling, _direction

_OFFSETS = [(dx, dy, dz) for dx in (0, 1) for dy in (0, 1) for dz in (0, 1)]


def _make_dimer(region: Region, a: Cell, b: Cell) -> Dimer:
    white, black = (a, b) if region.color(a) == -1 else (b, a)
    return Dimer(white, black, _direction(region, white, black))


@dataclass(frozen=True)
class FlipMove:
    """Two parallel dimers swapped for the only other pair filling the slab."""

    removed: tuple[Dimer, Dimer]
    inserted: tuple[Dimer, Dimer]
    slab_corner: Cell
    dimer_axis: int
    offset_axis: int

    def reversed(self) -> "FlipMove":
        return FlipMove(
            removed=self.inserted,
            inserted=self.removed,
            slab_corner=self.slab_corner,
            dimer_axis=self.offset_axis,
            offset_axis=self.dimer_axis,
        )


@dataclass(frozen=True)
class TritMove:
    """Three pairwise orthogonal dimers in a 2x2x2 cube, swapped and signed."""

    removed: tuple[Dimer, Dimer, Dimer]
    inserted: tuple[Dimer, Dimer, Dimer]
    anchor: Cell
    sign: int

    def reversed(self) -> "TritMove":
        return TritMove(
            removed=self.inserted,
            inserted=self.removed,
            anchor=self.anchor,
            sign=-self.sign,
        )


def find_flips(t: Tiling) -> list[FlipMove]:
    """Every available flip, duplicate-free, in a deterministic order."""
    region = t.region
    index = region.index
    mate = t.mate
    moves: list[FlipMove] = []
    seen: set[frozenset] = set()
    for d in t.dimers:
        for direction in range(6):
            if DIR_AXIS[direction] == d.axis:
                continue
            pb = region.step(d.white, direction)
            pw = region.step(d.black, direction)
            bi = index.get(pb)
            wi = index.get(pw)
            if bi is None or wi is None:
                continue
            if mate[bi] != wi:
                continue
            d2 = Dimer(pw, pb, _direction(region, pw, pb))
            key = frozenset([(d.white, d.black), (d2.white, d2.black)])
            if key in seen:
                continue
            seen.add(key)
            removed = tuple(sorted((d, d2), key=lambda x: x.white))
            inserted = tuple(sorted(
                (_make_dimer(region, d.white, pb), _make_dimer(region, d.black, pw)),
                key=lambda x: x.white))
            cells = (d.white, d.black, pw, pb)
            moves.append(FlipMove(
                removed=removed,
                inserted=inserted,
                slab_corner=min(cells),
                dimer_axis=d.axis,
                offset_axis=DIR_AXIS[direction],
            ))
    return moves


def apply_flip(t: Tiling, m: FlipMove) -> Tiling:
    return t.replace(m.removed, m.inserted)


def find_trits(t: Tiling) -> list[TritMove]:
    """Every available trit with its sign, duplicate-free, deterministic.

    Anchors range over every 2x2x2 cube position with at least 7 of its 8
    cells inside the region; a trit needs exactly three dimers of t fully
    inside the cube, one per axis. The two leftover cube cells are then
    automatically antipodal, and any of them lying in the region is covered
    by a dimer that exits the cube.
    """
    region = t.region
    index = region.index
    mate = t.mate
    anchors: set[Cell] = set()
    for cell in region.cells:
        for o in _OFFSETS:
            anchors.add(region.reduce((cell[0] - o[0], cell[1] - o[1], cell[2] - o[2])))
    moves: list[TritMove] = []
    seen: set[frozenset] = set()
    for a in sorted(anchors):
        cube = [region.reduce((a[0] + o[0], a[1] + o[1], a[2] + o[2])) for o in _OFFSETS]
        inside = [c for c in cube if c in index]
        if len(inside) < 7:
            continue
        cube_set = set(cube)
        dimer_pairs: set[tuple[Cell, Cell]] = set()
        for c in inside:
            i = index[c]
            partner = region.cells[mate[i]]
            if partner in cube_set:
                dimer_pairs.add((c, partner) if c <= partner else (partner, c))
        if len(dimer_pairs) != 3:
            continue
        dimers = sorted(
            (_make_dimer(region, ca, cb) for ca, cb in dimer_pairs),
            key=lambda d: d.axis)
        if [d.axis for d in dimers] != [0, 1, 2]:
            continue
        key = frozenset((d.white, d.black) for d in dimers)
        if key in seen:
            continue
        seen.add(key)
        covered = {c for d in dimers for c in d.cells()}
        leftover = [o for o in _OFFSETS
                    if region.reduce((a[0] + o[0], a[1] + o[1], a[2] + o[2])) not in covered]
        assert len(leftover) == 2 and all(
            leftover[0][m] + leftover[1][m] == 1 for m in range(3))
        moves.append(TritMove(
            removed=tuple(dimers),
            inserted=tuple(_complement_trio(region, a, dimers)),
            anchor=a,
            sign=1 if _chirality(region, a, dimers) else -1,
        ))
    return moves


def _offset(region: Region, a: Cell, cell: Cell, axis: int) -> int:
    off = cell[axis] - a[axis]
    if region.periods is not None:
        off %= region.periods[axis]
    assert off in (0, 1)
    return off


def _chirality(region: Region, a: Cell, dimers: Sequence[Dimer]) -> int:
    # y-offset of the x-dimer + z-offset of the y-dimer + x-offset of the
    # z-dimer, mod 2; dimers come sorted by axis.
    total = 0
    for k, d in enumerate(dimers):
        total += _offset(region, a, d.white, (k + 1) % 3)
    return total % 2


def _complement_trio(region: Region, a: Cell, dimers: Sequence[Dimer]) -> list[Dimer]:
    # The only other configuration covering the same six cells: each dimer
    # keeps its axis, both transverse offsets flip.
    out = []
    for k, d in enumerate(dimers):
        u, v = [ax for ax in range(3) if ax != k]
        cell0 = [0, 0, 0]
        cell0[k] = a[k]
        cell0[u] = a[u] + 1 - _offset(region, a, d.white, u)
        cell0[v] = a[v] + 1 - _offset(region, a, d.white, v)
        cell1 = list(cell0)
        cell1[k] += 1
        ca = region.reduce(tuple(cell0))
        cb = region.reduce(tuple(cell1))
        out.append(_make_dimer(region, ca, cb))
    return out


def apply_trit(t: Tiling, m: TritMove) -> Tiling:
    return t.replace(m.removed, m.inserted)


def _normalize_moves(moves: Union[str, Iterable[str]]) -> frozenset:
    if isinstance(moves, str):
        aliases = {
            "flip": {"flip"},
            "fliptrit": {"flip", "trit"},
            "flip+trit": {"flip", "trit"},
        }
        if moves not in aliases:
            raise ValueError("moves must be 'flip' or 'flip+trit'")
        return frozenset(aliases[moves])
    s = frozenset(moves)
    if not s or not s <= {"flip", "trit"}:
        raise ValueError("moves must be a nonempty subset of {'flip', 'trit'}")
    return s


@dataclass(frozen=True)
class MoveEdge:
    u: int
    v: int
    kind: str
    sign: int  # trit sign going u -> v; 0 for flips


class MoveGraph:
    """Move graph over a fully enumerated tiling set, keyed by canonical hash."""

    def __init__(self, region: Region, tilings: dict[int, Tiling],
                 edges: Sequence[MoveEdge], moves: frozenset):
        self.region = region
        self.tilings = tilings
        self.edges = tuple(edges)
        self.moves = moves
        self._adj: Optional[dict[int, list[tuple[int, str, int]]]] = None

    @property
    def adjacency(self) -> dict[int, list[tuple[int, str, int]]]:
        if self._adj is None:
            adj: dict[int, list[tuple[int, str, int]]] = {h: [] for h in self.tilings}
            for e in self.edges:
                adj[e.u].append((e.v, e.kind, e.sign))
                adj[e.v].append((e.u, e.kind, -e.sign))
            self._adj = adj
        return self._adj

    def components(self) -> list[list[int]]:
        """Connected components as hash lists, largest first."""
        parent = {h: h for h in self.tilings}

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for e in self.edges:
            ru, rv = find(e.u), find(e.v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, list[int]] = {}
        for h in self.tilings:
            groups.setdefault(find(h), []).append(h)
        return sorted(groups.values(), key=lambda g: (-len(g), g[0]))

    def component_sizes(self) -> list[int]:
        return [len(g) for g in self.components()]


def move_graph(tilings: Iterable[Tiling], moves: Union[str, Iterable[str]]) -> MoveGraph:
    """Build the move graph over a complete enumeration of a region's tilings."""
    move_set = _normalize_moves(moves)
    nodes: dict[int, Tiling] = {}
    region = None
    for t in tilings:
        if region is None:
            region = t.region
        elif t.region != region:
            raise ValueError("tilings belong to different regions")
        nodes[t.hash64] = t
    if region is None:
        raise ValueError("no tilings given")
    edge_keys: set[tuple[int, int, str, int]] = set()
    edges: list[MoveEdge] = []
    for h, t in nodes.items():
        outgoing: list[tuple[Tiling, str, int]] = []
        if "flip" in move_set:
            outgoing.extend((apply_flip(t, m), "flip", 0) for m in find_flips(t))
        if "trit" in move_set:
            outgoing.extend((apply_trit(t, m), "trit", m.sign) for m in find_trits(t))
        for t2, kind, sign in outgoing:
            h2 = t2.hash64
            if h2 not in nodes:
                raise ValueError("move target missing from the enumerated set")
            u, v, s = (h, h2, sign) if h <= h2 else (h2, h, -sign)
            key = (u, v, kind, s)
            if key in edge_keys:
                continue
            edge_keys.add(key)
            edges.append(MoveEdge(u, v, kind, s))
    return MoveGraph(region, nodes, edges, move_set)


def bfs_trit_labeling(g: MoveGraph, base: Union[Tiling, int]) -> tuple[dict[int, int], bool]:
    """Integer labels from signed trit counts along a BFS tree from base.

    label(base) = 0; flips leave the label unchanged, a trit edge adds its
    sign. Returns (labels for base's component, consistent), with consistent
    true iff every non-tree edge agrees with the labels, i.e. no cycle in the
    graph has a nonzero signed trit sum.
    """
    start = base.hash64 if isinstance(base, Tiling) else base
    if start not in g.tilings:
        raise ValueError("base tiling is not a node of the graph")
    labels = {start: 0}
    queue = [start]
    adj = g.adjacency
    while queue:
        nxt: list[int] = []
        for u in queue:
            for v, kind, sign in adj[u]:
                if v not in labels:
                    labels[v] = labels[u] + sign
                    nxt.append(v)
        queue = nxt
    consistent = True
    for e in g.edges:
        if e.u in labels and e.v in labels:
            if labels[e.v] - labels[e.u] != e.sign:
                consistent = False
                break
    return labels, consistent
