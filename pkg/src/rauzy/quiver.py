"""Double-arrow quivers of patches, vertex classes and horizontal lines."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .tiling import DIRECTIONS, UNIT_STEPS, Patch, Rhombus, step_index

# directions parallel to p(e3) are vertical; the rest are horizontal
VERTICAL = {step_index(DIRECTIONS[3]), step_index((0, -1))}


class Geometry:
    """Local incidence data of a patch: neighbours by direction and rhombi per vertex."""

    def __init__(self, patch: Patch):
        self.patch = patch
        self.nbr: dict = {}
        self.rhombi_at: dict = {}
        self.angle: Counter = Counter()
        for t in patch.tiles:
            a, u, v, w = t.corners()
            # corners in cyclic order a, u, w, v
            cyc = (a, u, w, v)
            for k in range(4):
                c, nxt, opp, prv = cyc[k], cyc[(k + 1) % 4], cyc[(k + 2) % 4], cyc[(k + 3) % 4]
                d1 = step_index((nxt[0] - c[0], nxt[1] - c[1]))
                d2 = step_index((prv[0] - c[0], prv[1] - c[1]))
                self.nbr.setdefault(c, {})[d1] = nxt
                self.nbr[c][d2] = prv
                self.rhombi_at.setdefault(c, []).append((d1, d2, opp, t))
                self.angle[c] += t.angle_at(c)

    def vertices(self):
        return sorted(self.nbr)

    def full(self, v) -> bool:
        return self.angle[v] == 360

    def degree(self, v) -> int:
        return len(self.nbr.get(v, {}))

    def common_rhombus(self, v, u, w):
        """Fourth corner of the rhombus having ``vu`` and ``vw`` as sides, else None."""
        du = step_index((u[0] - v[0], u[1] - v[1]))
        dw = step_index((w[0] - v[0], w[1] - v[1]))
        for d1, d2, opp, _ in self.rhombi_at.get(v, ()):
            if {d1, d2} == {du, dw}:
                return (u[0] + w[0] - v[0], u[1] + w[1] - v[1])
        return None

    def rhombus_with_corners(self, v, w):
        """Rhombi containing both ``v`` and ``w`` as corners."""
        return [t for (_, _, _, t) in self.rhombi_at.get(v, ()) if w in t.corners()]


@dataclass
class VertexClass:
    k: int
    n: int
    boundary: bool
    isolated: bool = False
    acute: bool | None = None

    @property
    def kn(self):
        return (self.k, self.n)

    def to_dict(self):
        d = {"k": self.k, "n": self.n, "boundary": self.boundary, "isolated": self.isolated}
        if self.isolated:
            d["angle"] = "acute" if self.acute else "obtuse"
        return d


@dataclass
class HorizontalLine:
    """All horizontal edges of one level, ordered by the ``b1``-coordinate.

    Horizontal steps change ``m`` by exactly one, so the width (the least
    number of horizontal edges joining the two ends) is ``m_max - m_min``.
    """

    vertices: list
    level: int
    edge_list: list = field(default_factory=list)

    @property
    def endpoints(self):
        return self.vertices[0], self.vertices[-1]

    @property
    def width(self) -> int:
        return self.vertices[-1][0] - self.vertices[0][0]

    @property
    def simple(self) -> bool:
        return len({v[0] for v in self.vertices}) == len(self.vertices)

    def edges(self):
        return list(self.edge_list)

    def __contains__(self, v):
        return v in set(self.vertices)

    def to_dict(self):
        return {"vertices": [list(v) for v in self.vertices], "level": self.level,
                "width": self.width, "endpoints": [list(v) for v in self.endpoints]}


@dataclass
class Quiver:
    patch: Patch
    vertices: list
    arrows: list  # (source, target)
    geometry: Geometry = field(repr=False)

    @property
    def arrow_set(self):
        return set(self.arrows)

    def edges(self):
        return sorted({frozenset(a) for a in self.arrows}, key=sorted)

    def to_dict(self, classes=None, lines=None):
        d = {
            "level": self.patch.level,
            "vertices": [list(v) for v in self.vertices],
            "arrows": [[list(s), list(t)] for s, t in self.arrows],
        }
        if classes is not None:
            d["classes"] = [{"vertex": list(v), **c.to_dict()} for v, c in sorted(classes.items())]
        if lines is not None:
            d["lines"] = [ln.to_dict() for ln in lines]
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(**kw))


def build_quiver(p: Patch) -> Quiver:
    g = Geometry(p)
    arrows = []
    for v in g.vertices():
        for d in sorted(g.nbr[v]):
            arrows.append((v, g.nbr[v][d]))
    return Quiver(p, g.vertices(), arrows, g)


def classify_vertices(q: Quiver, padded: Patch) -> dict:
    """(k, n) class of every vertex of ``q`` against the padded patch."""
    big = Geometry(padded)
    out = {}
    for v in q.vertices:
        if not big.full(v):
            raise ValueError(f"padded patch does not complete the star of {v}")
        k = q.geometry.degree(v)
        n = big.degree(v)
        boundary = not q.geometry.full(v)
        iso = k == 2
        acute = None
        if iso:
            acute = q.geometry.angle[v] == 60
        out[v] = VertexClass(k, n, boundary, iso, acute)
    return out


def class_histogram(classes: dict) -> dict:
    return dict(sorted(Counter(c.kn for c in classes.values()).items()))


def _horizontal_components(q: Quiver):
    """Connected components of the horizontal-edge subgraph (the levels)."""
    g = q.geometry
    comp = {}
    levels = []
    for v in q.vertices:
        if v in comp:
            continue
        idx = len(levels)
        stack = [v]
        comp[v] = idx
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for d, w in g.nbr[x].items():
                if d not in VERTICAL and w not in comp:
                    comp[w] = idx
                    stack.append(w)
        levels.append(members)
    return comp, levels


def find_horizontal_lines(q: Quiver) -> list[HorizontalLine]:
    """One line per level with at least one horizontal edge.

    The ends are the vertices of least and greatest ``m``; lines whose ends
    are both boundary vertices of the patch are returned.
    """
    g = q.geometry
    comp, levels = _horizontal_components(q)
    lines = []
    for idx, members in enumerate(levels):
        if len(members) < 2:
            continue
        members = sorted(members)
        lo = [v for v in members if v[0] == members[0][0]]
        hi = [v for v in members if v[0] == members[-1][0]]
        if len(lo) != 1 or len(hi) != 1:
            continue
        if g.full(lo[0]) or g.full(hi[0]):
            continue
        edges = sorted({tuple(sorted((v, w))) for v in members
                        for d, w in g.nbr[v].items() if d not in VERTICAL})
        lines.append(HorizontalLine(members, idx, edges))
    lines.sort(key=lambda ln: ln.vertices[0])
    return lines


def find_periodic_line_candidates(q: Quiver, classes: dict) -> list[HorizontalLine]:
    """Horizontal lines whose two endpoints are boundary 4-vertices of the full tiling."""
    out = []
    for ln in find_horizontal_lines(q):
        a, b = ln.endpoints
        if classes[a].n == 4 and classes[b].n == 4 and classes[a].boundary and classes[b].boundary:
            out.append(ln)
    return out
