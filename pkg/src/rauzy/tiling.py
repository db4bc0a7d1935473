"""Rauzy tiling patches generated by the three-letter substitution.

All geometry lives on the planar lattice with basis ``b1 = p(e2)``,
``b2 = p(e3)``; a lattice point is an integer pair ``(m, n)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConfigError, PatchError

# rows of the substitution matrix; columns c_k are M[:, k-1]
SUBST_MATRIX = np.array([[0, 1, 0], [0, 0, 1], [1, -1, -1]], dtype=object)

# p(e_k) in the (b1, b2) basis
DIRECTIONS = {1: (-1, -1), 2: (1, 0), 3: (0, 1)}

# six unit steps of the triangular lattice, counter-clockwise from p(e2)
UNIT_STEPS = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))

# real embedding of b1 and b2, used only for rendering and angles
B1_XY = (math.sqrt(3) / 2, -0.5)
B2_XY = (0.0, 1.0)

DEFAULT_PADDING = 6


def project(z) -> tuple[int, int]:
    """Project a cube point to lattice coordinates: ``(z2 - z1, z3 - z1)``."""
    z1, z2, z3 = z
    return (z2 - z1, z3 - z1)


def to_xy(pt) -> tuple[float, float]:
    m, n = pt
    return (m * B1_XY[0] + n * B2_XY[0], m * B1_XY[1] + n * B2_XY[1])


def step_index(step) -> int:
    """Position of a unit step in :data:`UNIT_STEPS` (counter-clockwise order)."""
    return UNIT_STEPS.index(tuple(step))


@dataclass(frozen=True, order=True)
class Rhombus:
    tile_type: int
    anchor: tuple[int, int, int]

    @property
    def spanning(self) -> tuple[tuple[int, int], tuple[int, int]]:
        i, j = (k for k in (1, 2, 3) if k != self.tile_type)
        return DIRECTIONS[i], DIRECTIONS[j]

    def corners(self) -> tuple[tuple[int, int], ...]:
        """Anchor, the two side corners, then the far corner."""
        return rhombus_corners(self)

    def triangles(self) -> tuple[frozenset, frozenset]:
        a, u, v, w = self.corners()
        # the anchor angle is 120 degrees, so the short diagonal joins a and w
        return (frozenset((a, u, w)), frozenset((a, v, w)))

    def edges(self) -> list[frozenset]:
        a, u, v, w = self.corners()
        return [frozenset(e) for e in ((a, u), (a, v), (u, w), (v, w))]

    def angle_at(self, pt) -> int:
        """Interior angle in degrees at corner ``pt``."""
        a, u, v, w = self.corners()
        if pt == a or pt == w:
            return 120
        if pt == u or pt == v:
            return 60
        raise ValueError(f"{pt} is not a corner of {self}")

    def translate(self, w) -> "Rhombus":
        return Rhombus(self.tile_type, tuple(x + y for x, y in zip(self.anchor, w)))


def rhombus_corners(r: Rhombus) -> tuple[tuple[int, int], ...]:
    m, n = project(r.anchor)
    (um, un), (vm, vn) = r.spanning
    return ((m, n), (m + um, n + un), (m + vm, n + vn), (m + um + vm, n + un + vn))


def _mat_vec(z):
    return tuple(int(sum(SUBST_MATRIX[r, c] * z[c] for c in range(3))) for r in range(3))


def _column(k):
    return tuple(int(SUBST_MATRIX[r, k - 1]) for r in range(3))


def substitute(r: Rhombus) -> list[Rhombus]:
    """Image of one tile under the substitution."""
    mz = _mat_vec(r.anchor)
    if r.tile_type == 1:
        c2, c3 = _column(2), _column(3)
        return [
            Rhombus(3, mz),
            Rhombus(1, tuple(a + b for a, b in zip(mz, c2))),
            Rhombus(2, tuple(a + b for a, b in zip(mz, c3))),
        ]
    if r.tile_type == 2:
        return [Rhombus(1, mz)]
    if r.tile_type == 3:
        return [Rhombus(2, mz)]
    raise ValueError(f"bad tile type {r.tile_type}")


@dataclass
class Patch:
    level: int
    tiles: list[Rhombus]
    _vertex_tiles: dict = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.tiles)

    def type_counts(self) -> tuple[int, int, int]:
        c = [0, 0, 0]
        for t in self.tiles:
            c[t.tile_type - 1] += 1
        return tuple(c)

    def vertex_tiles(self) -> dict:
        """Map lattice point -> list of tile indices having it as a corner."""
        if self._vertex_tiles is None:
            vt: dict = {}
            for idx, t in enumerate(self.tiles):
                for c in t.corners():
                    vt.setdefault(c, []).append(idx)
            self._vertex_tiles = vt
        return self._vertex_tiles

    def vertices(self) -> list[tuple[int, int]]:
        return sorted(self.vertex_tiles())

    def edges(self) -> list[frozenset]:
        es = set()
        for t in self.tiles:
            es.update(t.edges())
        return sorted(es, key=lambda e: sorted(e))

    def angle_sum(self, pt) -> int:
        return sum(self.tiles[i].angle_at(pt) for i in self.vertex_tiles().get(pt, ()))

    def has_full_star(self, pt) -> bool:
        return self.angle_sum(pt) == 360

    def degree(self, pt) -> int:
        """Number of patch edges at ``pt``."""
        nbrs = set()
        for i in self.vertex_tiles().get(pt, ()):
            for e in self.tiles[i].edges():
                if pt in e:
                    nbrs.update(e - {pt})
        return len(nbrs)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "tiles": [{"type": t.tile_type, "anchor": list(t.anchor)} for t in self.tiles],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Patch":
        return cls(d["level"], [Rhombus(t["type"], tuple(t["anchor"])) for t in d["tiles"]])


MAX_LEVEL = 22


@lru_cache(maxsize=None)
def _tiles_at(i: int) -> tuple[Rhombus, ...]:
    if i == 0:
        return (Rhombus(1, (0, 0, 0)), Rhombus(2, (0, 0, 0)), Rhombus(3, (0, 0, 0)))
    out = []
    for t in _tiles_at(i - 1):
        out.extend(substitute(t))
    return tuple(out)


def generate_patch(i: int, max_level: int = MAX_LEVEL) -> Patch:
    """Return the patch ``P_i``."""
    if i < 0:
        raise ConfigError(f"level must be >= 0, got {i}")
    if i > max_level:
        raise ConfigError(f"level {i} exceeds the configured budget ({max_level})")
    return Patch(i, list(_tiles_at(i)))


def sub_patch(i: int, k: int) -> Patch:
    """The tiles of ``P_i`` descending from the initial tile ``R_k``."""
    tiles = [Rhombus(k, (0, 0, 0))]
    for _ in range(i):
        tiles = [s for t in tiles for s in substitute(t)]
    return Patch(i, tiles)


@dataclass
class ValidityReport:
    valid: bool
    n_tiles: int
    n_triangles: int
    n_vertices: int
    n_edges: int
    euler_characteristic: int
    interior_vertices: int
    overlap: tuple | None = None
    connected: bool = True

    def __bool__(self):
        return self.valid


def validate_patch(p: Patch) -> ValidityReport:
    """Check that tiles do not overlap and that their union is edge-connected."""
    owner: dict = {}
    overlap = None
    for idx, t in enumerate(p.tiles):
        for tri in t.triangles():
            if tri in owner and overlap is None:
                overlap = (p.tiles[owner[tri]], t)
            owner.setdefault(tri, idx)
    # edge-connectivity over shared edges
    edge_tiles: dict = {}
    for idx, t in enumerate(p.tiles):
        for e in t.edges():
            edge_tiles.setdefault(e, []).append(idx)
    parent = list(range(len(p.tiles)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for ts in edge_tiles.values():
        for a in ts[1:]:
            ra, rb = find(ts[0]), find(a)
            if ra != rb:
                parent[ra] = rb
    connected = len({find(a) for a in range(len(p.tiles))}) <= 1
    nv = len(p.vertex_tiles())
    ne = len(edge_tiles)
    interior = sum(1 for v in p.vertex_tiles() if p.has_full_star(v))
    return ValidityReport(
        valid=overlap is None and connected,
        n_tiles=len(p.tiles),
        n_triangles=len(owner),
        n_vertices=nv,
        n_edges=ne,
        euler_characteristic=nv - ne + len(p.tiles),
        interior_vertices=interior,
        overlap=overlap,
        connected=connected,
    )


def padded_patch(i: int, padding: int = DEFAULT_PADDING, vertices=None, radius: int = 0):
    """Smallest ``P_j`` (j >= i) in which the requested vertices have full stars.

    By default the requested vertices are those of ``P_i``.  With ``radius > 0``
    every vertex within that graph distance of them must be complete as well.
    Returns ``(P_j, degrees)`` with the full-tiling degree of each vertex of
    ``P_i``.
    """
    base = generate_patch(i)
    targets = set(base.vertices()) if vertices is None else set(vertices)
    for j in range(i, i + padding + 1):
        big = generate_patch(j)
        ball = _ball(big, targets, radius)
        if ball is not None and all(big.has_full_star(v) for v in ball):
            degrees = {v: big.degree(v) for v in base.vertices()}
            return big, degrees
    raise PatchError(
        f"vertices of P_{i} not surrounded within padding bound j <= {i + padding}"
    )


def _ball(p: Patch, centres, radius):
    vt = p.vertex_tiles()
    if any(c not in vt for c in centres):
        return None
    seen = set(centres)
    frontier = list(centres)
    for _ in range(radius):
        nxt = []
        for v in frontier:
            if not p.has_full_star(v):
                return None
            for m, n in UNIT_STEPS:
                w = (v[0] + m, v[1] + n)
                if w in vt and w not in seen and _is_edge(p, v, w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def _is_edge(p: Patch, v, w) -> bool:
    e = frozenset((v, w))
    vt = p.vertex_tiles()
    return any(e in p.tiles[t].edges() for t in vt.get(v, ()))
