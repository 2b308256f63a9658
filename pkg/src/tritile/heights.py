"""Height functions on coquadriculated surfaces and flip connection.

A coquadriculated surface is a bipartite graph embedded in an oriented
surface with boundary so that every complementary component is a square.
Tilings are perfect matchings of that graph. The face set V consists of
the squares plus one extra element INF standing for the boundary; the
winding of a tiling difference is the unique integer field on V that
vanishes at INF and whose boundary coboundary reproduces the difference.

Height functions are averages of windings over a flux class, kept as exact
fractions. The flip-connection algorithm follows the constructive proof:
repeatedly flip the class-maximal face of the current tiling, routing
through the pointwise meet of the two height functions, which makes the
sequence length equal to the total winding mass.
"""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

INF = "inf"

FaceId = Union[tuple, str]
SurfaceTiling = frozenset


class CoquadSurface:
    """Explicit vertex / edge / face incidence of a coquadriculated surface.

    colors maps vertex ids to +1 (black) or -1 (white). Each edge is a
    (black, white, left, right) record: an oriented edge from its black to
    its white endpoint with the face ids on either side, INF for the
    boundary component. Every non-INF face must be a square: exactly four
    incident edges forming a 4-cycle.
    """

    __slots__ = ("colors", "vertices", "edges", "faces", "vertex_edges",
                 "face_edges", "all_faces")

    def __init__(self, colors: dict, edges: Sequence[tuple],
                 faces: Iterable[FaceId]):
        self.colors = dict(colors)
        self.vertices = tuple(sorted(self.colors))
        if not self.vertices:
            raise ValueError("surface has no vertices")
        for v, c in self.colors.items():
            if c not in (1, -1):
                raise ValueError("vertex %r has color %r, expected +1 or -1" % (v, c))
        face_set = set(faces)
        if INF in face_set:
            face_set.discard(INF)
        self.faces = tuple(sorted(face_set))
        self.all_faces = self.faces + (INF,)
        self.edges = tuple((b, w, l, r) for (b, w, l, r) in edges)
        vertex_edges: dict = {v: [] for v in self.vertices}
        face_edges: dict = {f: [] for f in self.all_faces}
        for i, (b, w, l, r) in enumerate(self.edges):
            if self.colors.get(b) != 1 or self.colors.get(w) != -1:
                raise ValueError("edge %d is not black-to-white" % i)
            for f in (l, r):
                if f != INF and f not in face_set:
                    raise ValueError("edge %d names unknown face %r" % (i, f))
                face_edges[f].append(i)
            vertex_edges[b].append(i)
            vertex_edges[w].append(i)
        self.vertex_edges = {v: tuple(es) for v, es in vertex_edges.items()}
        self.face_edges = {f: tuple(es) for f, es in face_edges.items()}
        self._check_squares()
        self._check_connected()

    def _check_squares(self) -> None:
        for f in self.faces:
            es = self.face_edges[f]
            if len(es) != 4:
                raise ValueError("face %r has %d incident edges, expected 4"
                                 % (f, len(es)))
            degree: dict = {}
            for i in es:
                b, w = self.edges[i][0], self.edges[i][1]
                degree[b] = degree.get(b, 0) + 1
                degree[w] = degree.get(w, 0) + 1
            if len(degree) != 4 or any(d != 2 for d in degree.values()):
                raise ValueError("face %r is not bounded by a 4-cycle" % (f,))

    def _check_connected(self) -> None:
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for i in self.vertex_edges[v]:
                b, w = self.edges[i][0], self.edges[i][1]
                u = w if v == b else b
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(self.vertices):
            raise ValueError("surface graph is not connected")

    def other_face(self, edge_index: int, face: FaceId) -> FaceId:
        b, w, l, r = self.edges[edge_index]
        return r if face == l else l

    def face_neighbors(self, face: FaceId) -> list:
        return [self.other_face(i, face) for i in self.face_edges[face]]

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": _id_out(v), "color": self.colors[v]}
                         for v in self.vertices],
            "edges": [{"black": _id_out(b), "white": _id_out(w),
                       "left": _id_out(l), "right": _id_out(r)}
                      for (b, w, l, r) in self.edges],
            "faces": [_id_out(f) for f in self.all_faces],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _id_out(v):
    return list(v) if isinstance(v, tuple) else v


def _id_in(v):
    return tuple(_id_in(x) for x in v) if isinstance(v, list) else v


def surface_from_dict(data: dict) -> CoquadSurface:
    colors = {_id_in(item["id"]): item["color"] for item in data["vertices"]}
    edges = [(_id_in(e["black"]), _id_in(e["white"]),
              _id_in(e["left"]), _id_in(e["right"])) for e in data["edges"]]
    faces = [_id_in(f) for f in data["faces"]]
    return CoquadSurface(colors, edges, faces)


def surface_from_json(text: str) -> CoquadSurface:
    return surface_from_dict(json.loads(text))


def build_planar_surface(cells: Iterable[tuple]) -> CoquadSurface:
    """The dual grid graph of a connected, balanced 2D quadriculated region.

    Vertices are the cells, black when the coordinate sum is even. Faces are
    the unit squares with all four surrounding cells present; every other
    side of an edge is the boundary element INF.
    """
    cell_list = sorted(set(cells))
    if not cell_list:
        raise ValueError("empty region")
    cell_set = set(cell_list)
    colors = {c: (1 if (c[0] + c[1]) % 2 == 0 else -1) for c in cell_list}
    if sum(colors.values()) != 0:
        raise ValueError("unbalanced region")
    seen = {cell_list[0]}
    queue = deque(seen)
    while queue:
        x, y = queue.popleft()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cell_set and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    if len(seen) != len(cell_list):
        raise ValueError("region is not connected")

    def face_of(point2: tuple) -> FaceId:
        # point2 is a face center in doubled coordinates (both odd)
        m = ((point2[0] - 1) // 2, (point2[1] - 1) // 2)
        corners = (m, (m[0] + 1, m[1]), (m[0], m[1] + 1), (m[0] + 1, m[1] + 1))
        return m if all(c in cell_set for c in corners) else INF

    edges = []
    for cell in cell_list:
        for step in ((1, 0), (0, 1)):
            nbr = (cell[0] + step[0], cell[1] + step[1])
            if nbr not in cell_set:
                continue
            if colors[cell] == 1:
                b, w = cell, nbr
            else:
                b, w = nbr, cell
            # doubled midpoint plus the 90-degree left turn of black-to-white
            s = (w[0] - b[0], w[1] - b[1])
            mid2 = (b[0] + w[0], b[1] + w[1])
            left = face_of((mid2[0] - s[1], mid2[1] + s[0]))
            right = face_of((mid2[0] + s[1], mid2[1] - s[0]))
            edges.append((b, w, left, right))
    faces = {f for e in edges for f in (e[2], e[3]) if f != INF}
    return CoquadSurface(colors, edges, faces)


def enumerate_surface_tilings(s: CoquadSurface) -> list:
    """All perfect matchings of the surface graph, as frozensets of edge ids."""
    order = s.vertices
    results = []
    matched: set = set()
    chosen: list[int] = []

    def extend(pos: int) -> None:
        while pos < len(order) and order[pos] in matched:
            pos += 1
        if pos == len(order):
            results.append(frozenset(chosen))
            return
        v = order[pos]
        for i in s.vertex_edges[v]:
            b, w = s.edges[i][0], s.edges[i][1]
            u = w if v == b else b
            if u in matched:
                continue
            matched.add(v)
            matched.add(u)
            chosen.append(i)
            extend(pos + 1)
            chosen.pop()
            matched.discard(v)
            matched.discard(u)

    extend(0)
    return sorted(results, key=sorted)


class HeightField:
    """A function on the faces of a coquadriculated surface, zero at INF."""

    __slots__ = ("surface", "values", "integral")

    def __init__(self, surface: CoquadSurface, values: dict):
        self.surface = surface
        vals = dict(values)
        vals.setdefault(INF, 0)
        if vals[INF] != 0:
            raise ValueError("height at the boundary element must be 0")
        self.values = vals
        self.integral = all(_is_integer(x) for x in vals.values())

    def __getitem__(self, face: FaceId):
        return self.values[face]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeightField):
            return NotImplemented
        return self.surface is other.surface and self.values == other.values

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def __repr__(self) -> str:
        body = ", ".join("%r: %s" % (f, self.values[f]) for f in self.surface.faces)
        return "HeightField({%s})" % body


def _is_integer(x) -> bool:
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def winding(t1: SurfaceTiling, t0: SurfaceTiling,
            s: CoquadSurface) -> Optional[HeightField]:
    """wind(t1 - t0): the unique face field with w(INF) = 0 whose coboundary
    is the tiling difference, or None when none exists (different flux)."""
    w: dict = {INF: 0}
    queue = deque([INF])
    while queue:
        f = queue.popleft()
        for i in s.face_edges[f]:
            b, wv, l, r = s.edges[i]
            delta = (i in t1) - (i in t0)
            if f == l:
                g, value = r, w[f] - delta
            else:
                g, value = l, w[f] + delta
            if g not in w:
                w[g] = value
                queue.append(g)
    if len(w) != len(s.all_faces):
        raise ValueError("face graph is not connected")
    for i, (b, wv, l, r) in enumerate(s.edges):
        if w[l] - w[r] != (i in t1) - (i in t0):
            return None
    return HeightField(s, w)


class TilingClass:
    """A flux class of surface tilings: windings exist between any two."""

    __slots__ = ("surface", "tilings", "stable")

    def __init__(self, surface: CoquadSurface, tilings: Sequence[SurfaceTiling]):
        self.surface = surface
        self.tilings = tuple(tilings)
        covered = set()
        for t in self.tilings:
            covered |= t
        self.stable = covered == set(range(len(surface.edges)))

    def __contains__(self, t: SurfaceTiling) -> bool:
        return t in set(self.tilings)

    def __len__(self) -> int:
        return len(self.tilings)


def tiling_classes(s: CoquadSurface) -> list[TilingClass]:
    """Partition all tilings of s by flux (mutual winding existence)."""
    groups: list[list[SurfaceTiling]] = []
    for t in enumerate_surface_tilings(s):
        for group in groups:
            if winding(t, group[0], s) is not None:
                group.append(t)
                break
        else:
            groups.append([t])
    return [TilingClass(s, g) for g in groups]


def is_stable(cls: TilingClass) -> bool:
    """Every edge of the surface graph belongs to some tiling in the class."""
    return cls.stable


def height_function(t: SurfaceTiling, cls: TilingClass) -> HeightField:
    """h_t, the average winding of t against every member of its class."""
    if t not in cls:
        raise ValueError("tiling is not a member of the class")
    s = cls.surface
    totals = {f: 0 for f in s.all_faces}
    for other in cls.tilings:
        w = winding(t, other, s)
        assert w is not None, "class members must have mutual windings"
        for f in s.all_faces:
            totals[f] += w[f]
    n = len(cls.tilings)
    return HeightField(s, {f: Fraction(totals[f], n) for f in s.all_faces})


def face_flips(s: CoquadSurface, t: SurfaceTiling) -> list:
    """Faces where t matches two opposite sides of the square, sorted."""
    out = []
    for f in s.faces:
        es = s.face_edges[f]
        inside = [i for i in es if i in t]
        if len(inside) != 2:
            continue
        (b0, w0), (b1, w1) = s.edges[inside[0]][:2], s.edges[inside[1]][:2]
        if {b0, w0}.isdisjoint({b1, w1}):
            out.append(f)
    return out


def apply_face_flip(s: CoquadSurface, t: SurfaceTiling, face: FaceId) -> SurfaceTiling:
    if face not in s.face_edges or face == INF:
        raise ValueError("unknown face %r" % (face,))
    if face not in face_flips(s, t):
        raise ValueError("no flip available at face %r" % (face,))
    return t.symmetric_difference(s.face_edges[face])


def flip_connect(t0: SurfaceTiling, t1: SurfaceTiling,
                 cls: TilingClass) -> list:
    """A minimal flip sequence from t0 to t1, as an ordered list of face ids.

    Routed through the pointwise meet of the two height functions; the
    length equals the total absolute winding of t1 - t0. Requires a stable
    class containing both tilings.
    """
    s = cls.surface
    if not cls.stable:
        raise ValueError("class is not stable")
    if t0 not in cls or t1 not in cls:
        raise ValueError("tiling is not a member of the class")
    if winding(t1, t0, s) is None:
        raise ValueError("tilings have different flux")
    if t0 == t1:
        return []
    h0 = height_function(t0, cls)
    h1 = height_function(t1, cls)
    meet = HeightField(s, {f: min(h0[f], h1[f]) for f in s.all_faces})
    down0, t_meet0 = _descend(t0, h0, meet, cls)
    down1, t_meet1 = _descend(t1, h1, meet, cls)
    assert t_meet0 == t_meet1, "both descents must reach the meet tiling"
    seq = down0 + down1[::-1]
    check = t0
    for f in seq:
        check = apply_face_flip(s, check, f)
    assert check == t1, "replayed flip sequence must reach the target"
    return seq


def _descend(t: SurfaceTiling, h: HeightField, target: HeightField,
             cls: TilingClass) -> tuple[list, SurfaceTiling]:
    """Flip t downward until its height field equals target.

    Each step flips the face with the largest excess over the target,
    tie-broken by the largest current height and then by face id; the proof
    of the connection theorem guarantees the flip is available and lowers
    the height there by exactly 1.
    """
    s = cls.surface
    cur = t
    offset = {f: 0 for f in s.all_faces}
    seq = []
    while True:
        excess = {f: h[f] + offset[f] - target[f] for f in s.faces}
        top = max(excess.values(), default=0)
        if top <= 0:
            break
        candidates = [f for f in s.faces if excess[f] == top]
        v2 = max(candidates, key=lambda f: (h[f] + offset[f], _face_sort_key(f)))
        cur = apply_face_flip(s, cur, v2)
        offset[v2] -= 1
        seq.append(v2)
    return seq, cur


def _face_sort_key(f: FaceId):
    # deterministic tie-break; negated tuple prefers the lexicographically
    # smallest face id under max()
    return tuple(-x for x in f) if isinstance(f, tuple) else f


def tiling_from_height(h: HeightField, cls: TilingClass) -> SurfaceTiling:
    """The unique tiling whose height function is h.

    h must satisfy the height conditions for the class: zero at INF,
    integer offsets from the class heights, strict neighbor bound.
    """
    s = cls.surface
    ref = cls.tilings[0]
    href = height_function(ref, cls)
    w = {}
    for f in s.all_faces:
        diff = h[f] - href[f]
        if not _is_integer(diff):
            raise ValueError("height field is not an integer offset of the class")
        w[f] = int(diff)
    chosen = []
    for i, (b, wv, l, r) in enumerate(s.edges):
        coeff = (i in ref) + w[l] - w[r]
        if coeff == 1:
            chosen.append(i)
        elif coeff != 0:
            raise ValueError("height field does not define a tiling")
    t = frozenset(chosen)
    degree = {v: 0 for v in s.vertices}
    for i in t:
        degree[s.edges[i][0]] += 1
        degree[s.edges[i][1]] += 1
    if any(d != 1 for d in degree.values()):
        raise ValueError("height field does not define a tiling")
    return t


def pointwise_min(h1: HeightField, h2: HeightField) -> HeightField:
    _check_same_surface(h1, h2)
    return HeightField(h1.surface, {f: min(h1[f], h2[f])
                                    for f in h1.surface.all_faces})


def pointwise_max(h1: HeightField, h2: HeightField) -> HeightField:
    _check_same_surface(h1, h2)
    return HeightField(h1.surface, {f: max(h1[f], h2[f])
                                    for f in h1.surface.all_faces})


def _check_same_surface(h1: HeightField, h2: HeightField) -> None:
    if h1.surface is not h2.surface:
        raise ValueError("height fields live on different surfaces")
