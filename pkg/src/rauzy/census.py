"""Configurations of tile types on small sections of the lattice.

Every lattice point of the tiling is the *base* of exactly one tile once each
tile type is assigned one of its four corners.  With that convention a window
``{(k+i) b1 + (l+j) b2}`` of ``m`` columns and ``n`` rows reads off as an
``n x m`` matrix of types, row ``j`` holding the points at height ``l + n - j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import RauzyError
from .tiling import UNIT_STEPS, Patch, Rhombus, generate_patch

# the lists of configurations whose counts are mn + m + n
KNOWN_CONFIGURATIONS = {
    (1, 1): [((1,),), ((2,),), ((3,),)],
    (1, 2): [((1,), (1,)), ((2,), (2,)), ((1,), (3,)), ((2,), (1,)), ((3,), (2,))],
    (2, 1): [((1, 1),), ((1, 2),), ((3, 1),), ((2, 1),), ((2, 3),)],
    (2, 2): [((1, 2), (1, 2)), ((2, 1), (2, 3)), ((1, 2), (1, 1)), ((1, 2), (3, 1)),
             ((1, 1), (3, 1)), ((2, 3), (1, 2)), ((3, 1), (2, 3)), ((3, 1), (2, 1))],
    (3, 2): [((1, 2, 1), (1, 2, 3)), ((1, 1, 2), (3, 1, 2)), ((1, 2, 3), (1, 1, 2)),
             ((1, 2, 3), (3, 1, 2)), ((2, 1, 1), (2, 3, 1)), ((2, 1, 2), (2, 3, 1)),
             ((2, 3, 1), (1, 2, 1)), ((2, 3, 1), (1, 2, 3)), ((3, 1, 2), (2, 1, 1)),
             ((3, 1, 2), (2, 1, 2)), ((3, 1, 2), (2, 3, 1))],
}

# completions of the two ends of a periodic line
RIGHT_END = ((3, 1), (2, 1))
LEFT_END = ((3, 1, 2), (2, 1, 1))

CENSUS_LEVEL = 10


class CensusError(RauzyError):
    pass


def interior_points(p: Patch, depth: int = 2) -> set:
    """Vertices whose ``depth``-neighbourhood consists of complete stars."""
    pts = {v for v in p.vertices() if p.has_full_star(v)}
    for _ in range(depth - 1):
        pts = {v for v in pts if all((v[0] + a, v[1] + b) in pts for a, b in UNIT_STEPS)}
    return pts


def _offsets(choice) -> tuple:
    """Base offsets from the anchor for a corner choice per type."""
    return tuple(Rhombus(t, (0, 0, 0)).corners()[c] for t, c in zip((1, 2, 3), choice))


def _canonical(choice) -> tuple:
    """Representative of the class of ``choice`` modulo a common translation of all bases."""
    offs = _offsets(choice)
    best = None
    for other in itertools.product(range(4), repeat=3):
        o2 = _offsets(other)
        d = {(a[0] - b[0], a[1] - b[1]) for a, b in zip(offs, o2)}
        if len(d) == 1 and (best is None or other < best):
            best = other
    return best


@dataclass
class BaseConvention:
    corner: tuple  # corner index per tile type 1, 2, 3 (0 = anchor, 3 = far corner)
    survivors: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    disambiguated: bool = False

    def base(self, tile) -> tuple:
        return tile.corners()[self.corner[tile.tile_type - 1]]

    def type_map(self, p: Patch) -> dict:
        return {self.base(t): t.tile_type for t in p.tiles}

    def to_dict(self):
        return {"corner": list(self.corner), "survivors": [list(s) for s in self.survivors],
                "translation_classes": [list(c) for c in self.classes],
                "disambiguated_by_columns": self.disambiguated}


def base_survivors(p: Patch, interior=None) -> list:
    """Corner choices under which each interior point is the base of exactly one tile."""
    interior = interior_points(p) if interior is None else interior
    corners = [(t.tile_type, t.corners()) for t in p.tiles]
    out = []
    for choice in itertools.product(range(4), repeat=3):
        count: dict = {}
        for tt, cs in corners:
            b = cs[choice[tt - 1]]
            count[b] = count.get(b, 0) + 1
        if all(count.get(v, 0) == 1 for v in interior):
            out.append(choice)
    return out


def determine_base_convention(p: Patch | None = None, reference=KNOWN_CONFIGURATIONS[(1, 2)]) -> BaseConvention:
    """Fix the base corner of each tile type by the exactly-one-base property.

    Choices that differ by a common translation give the same configurations
    and are identified.  If more than one class survives, the classes are told
    apart by the column configurations ``reference`` (the (1, 2) list).
    """
    p = generate_patch(CENSUS_LEVEL) if p is None else p
    interior = interior_points(p)
    surv = base_survivors(p, interior)
    classes = sorted({_canonical(c) for c in surv})
    if not classes:
        raise CensusError("no corner choice makes every interior point a unique base")
    if len(classes) == 1:
        return BaseConvention(classes[0], surv, classes)
    keep = []
    for c in classes:
        conv = BaseConvention(c)
        got = configurations(p, 1, 2, conv, interior)
        if got == set(reference):
            keep.append(c)
    if len(keep) != 1:
        raise CensusError(f"base convention not determined: classes {classes}, matching {keep}")
    return BaseConvention(keep[0], surv, classes, True)


def window(k, l, m, n):
    """Lattice points of the section at ``(k, l)`` as rows (top row first)."""
    return [[(k + i, l + n - j) for i in range(1, m + 1)] for j in range(1, n + 1)]


def configurations(p: Patch, m: int, n: int, conv: BaseConvention, interior=None) -> set:
    interior = interior_points(p) if interior is None else interior
    types = conv.type_map(p)
    out = set()
    for (a, b) in interior:
        rows = window(a - 1, b - n, m, n)
        if all(pt in interior for r in rows for pt in r):
            out.add(tuple(tuple(types[pt] for pt in r) for r in rows))
    return out


@dataclass
class CensusResult:
    m: int
    n: int
    configs: list
    count: int
    previous_count: int
    stable: bool
    matches_table: bool | None

    @property
    def expected(self) -> int:
        return self.m * self.n + self.m + self.n

    def to_dict(self):
        return {"m": self.m, "n": self.n, "count": self.count, "expected": self.expected,
                "previous_level_count": self.previous_count, "stable": self.stable,
                "matches_table": self.matches_table,
                "configurations": [[list(r) for r in c] for c in self.configs]}


def enumerate_configurations(m: int, n: int, level: int = CENSUS_LEVEL,
                             conv: BaseConvention | None = None) -> CensusResult:
    """All ``n x m`` type matrices seen in interior windows of ``P_level``.

    The count at ``level - 1`` is reported too; the census is trusted only when
    both agree.
    """
    conv = determine_base_convention() if conv is None else conv
    cur = configurations(generate_patch(level), m, n, conv)
    prev = configurations(generate_patch(level - 1), m, n, conv)
    ref = KNOWN_CONFIGURATIONS.get((m, n))
    return CensusResult(m, n, sorted(cur), len(cur), len(prev), len(cur) == len(prev),
                        None if ref is None else cur == set(ref))


@dataclass
class EndpointCertificate:
    line: tuple
    left: tuple
    right: tuple
    left_config: tuple | None
    right_config: tuple | None
    left_class: tuple
    right_class: tuple

    @property
    def left_ok(self) -> bool:
        return self.left_config == LEFT_END

    @property
    def right_ok(self) -> bool:
        return self.right_config == RIGHT_END

    @property
    def ok(self) -> bool:
        return self.left_ok and self.right_ok and self.left_class[1] == 4 and self.right_class[1] == 4

    def to_dict(self):
        def mat(c):
            return None if c is None else [list(r) for r in c]
        return {"left": list(self.left), "right": list(self.right),
                "left_window": mat(self.left_config), "right_window": mat(self.right_config),
                "left_class": list(self.left_class), "right_class": list(self.right_class),
                "ok": self.ok}


def _read(types, rows):
    try:
        return tuple(tuple(types[pt] for pt in r) for r in rows)
    except KeyError:
        return None


def certify_line_endpoints(line, classes: dict, big: Patch, conv: BaseConvention | None = None) -> EndpointCertificate:
    """Read the type windows at both ends of a line in a patch that surrounds it.

    The right end is the upper right point of a 2 x 2 window, the left end the
    upper middle point of a 3 x 2 window; the windows must be the completions
    (3 1 / 2 1) and (3 1 2 / 2 1 1).  ``classes`` supplies the (k, n) classes
    of the endpoints for the cross-check.
    """
    conv = determine_base_convention() if conv is None else conv
    types = conv.type_map(big)
    left, right = line.endpoints
    rc = _read(types, window(right[0] - 2, right[1] - 1, 2, 2))
    lc = _read(types, window(left[0] - 2, left[1] - 1, 3, 2))
    return EndpointCertificate(tuple(line.endpoints), left, right, lc, rc,
                               classes[left].kn, classes[right].kn)
