"""Arrow modules at the edge of a truncation and Ω-orbits along horizontal lines.

A horizontal line ``L`` of ``Q_i`` whose ends are boundary 4-vertices carries
an Ω-orbit of arrow modules.  The orbit walks along ``L``, turns at each end
through a module ``h h̄ A_i`` (``h`` the arrow leaving ``V_i`` at that end) and
comes back, so its period is ``2k + 2`` for a line of width ``k``.

The turn relies on the arrow truncation identities

    bAe = b b̄ Ae = b b̄ A_i,        b̄Ae ≅ b b̄ A_i

for an arrow ``b: u -> w`` leaving ``V`` whose two rhombi have their corners
opposite ``u`` outside ``V``.  When a far corner lies back inside ``V`` the
identity fails, the turn produces a larger module and the orbit is not
periodic; :func:`certify_periodic_line` records that condition per end.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import modcalc as mc
from .census import BaseConvention, certify_line_endpoints, determine_base_convention
from .quiver import VERTICAL, HorizontalLine
from .sequences import arrow_case, arrow_pair_sequences, star_sequences, restrict_instance, star_frame
from .tiling import generate_patch

LINE_MODULE_DIM_CAP = 64


# --- the truncation hypothesis ------------------------------------------------------

def far_corners(geom, u, w) -> list:
    """Corners opposite ``u`` in the rhombi containing the edge ``u w``."""
    d = [k for k, x in geom.nbr[u].items() if x == w][0]
    return [opp for d1, d2, opp, _ in geom.rhombi_at[u] if d in (d1, d2)]


def truncation_hypothesis(geom, V, u, w) -> bool:
    """``u`` in ``V``; ``w`` and the corners opposite ``u`` along ``u w`` outside ``V``."""
    return u in V and w not in V and all(y not in V for y in far_corners(geom, u, w))


def outside_arrows(geom, V, u) -> list:
    return [(u, w) for w in geom.nbr[u].values() if w not in V]


# --- arrow truncation ------------------------------------------------------------

@dataclass
class ArrowTruncationReport:
    arrow: tuple
    part: str  # "a": the 4-vertex is the source, "b": it is the target
    angles: str  # "i" or "ii", the case of the rhombi along the arrow
    equalities: dict
    sequences: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.equalities.values()) and all(self.sequences.values())

    def to_dict(self):
        return {"arrow": [list(self.arrow[0]), list(self.arrow[1])], "part": self.part,
                "angles": self.angles, "equalities": self.equalities,
                "restricted_sequences": self.sequences, "ok": self.ok}


def _frame_towards(geom, z, x):
    n = len(geom.nbr[z])
    for r in range(n):
        fr = star_frame(geom, z, r)
        if fr is not None and fr.x(1) == x:
            return fr, r
    return None, None


def _on_V(spaces: dict, V) -> dict:
    return {x: m for x, m in spaces.items() if x in V and m.shape[0]}


def arrow_truncation_check(full, ring, u, w) -> ArrowTruncationReport | None:
    """Check the truncation identities for the arrow ``u -> w`` leaving ``V``.

    ``full`` is a ring on the whole window (faithful to ``A`` near ``V``) and
    ``ring`` the truncation.  Returns None unless one end is a 4-vertex and the
    hypothesis of :func:`truncation_hypothesis` holds.
    """
    geom = full.alg.geom
    V = ring.V
    if not truncation_hypothesis(geom, V, u, w):
        return None
    if geom.degree(u) == 4:
        part, z, x = "a", u, w
    elif geom.degree(w) == 4:
        part, z, x = "b", w, u
    else:
        return None
    fr, rot = _frame_towards(geom, z, x)
    if fr is None:
        return None
    F = ring.field
    b, b_ = ((u, w),), ((w, u),)
    loop = b + b_
    _, i_b = mc.path_module(full, b)
    _, i_loop_A = mc.path_module(full, loop)
    M_loop, i_loop = mc.path_module(ring, loop)
    bA = _on_V(mc.subspaces_of(i_b), V)
    eq = {
        "bAe = b b̄ Ae": mc.same_subspaces(bA, _on_V(mc.subspaces_of(i_loop_A), V), F),
        "b b̄ Ae = b b̄ A_i": mc.same_subspaces(_on_V(mc.subspaces_of(i_loop_A), V),
                                              mc.subspaces_of(i_loop), F),
    }
    Mb_, _ = mc.path_module(full, b_)
    eq["b̄Ae ≅ b b̄ A_i"] = mc.is_isomorphic(mc.restrict(Mb_, ring), M_loop)
    seqs = {}
    for inst in arrow_pair_sequences(full, fr, rot):
        seqs[inst.name] = inst.exact and bool(restrict_instance(inst, ring))
    return ArrowTruncationReport((u, w), part, arrow_case(fr), eq, seqs)


def boundary_arrows(geom, V) -> list:
    """Arrows leaving ``V`` at which the truncation identities are expected."""
    out = []
    for u in sorted(V):
        for a in outside_arrows(geom, V, u):
            if truncation_hypothesis(geom, V, *a) and 4 in (geom.degree(a[0]), geom.degree(a[1])):
                out.append(a)
    return out


def restricted_sequence_report(full, ring, vertices) -> dict:
    """Build every catalogued sequence at ``vertices`` over ``A`` and apply ``(-)e``.

    Returns counts ``{name: [exact after restriction, total]}``.
    """
    geom = full.alg.geom
    out: dict = {}
    for z in vertices:
        if not full.alg.safe(z):
            continue
        for rot in range(geom.degree(z)):
            fr = star_frame(geom, z, rot)
            if fr is None:
                continue
            for inst in star_sequences(full, fr, rot):
                if not inst.exact:
                    continue
                ok = bool(restrict_instance(inst, ring))
                rec = out.setdefault(inst.name, [0, 0])
                rec[0] += ok
                rec[1] += 1
    return out


def near_boundary(geom, V, steps: int = 1) -> list:
    """Vertices within ``steps`` of the complement of ``V`` (on either side)."""
    edge = {v for v in V if any(w not in V for w in geom.nbr[v].values())}
    seen = set(edge)
    frontier = list(edge)
    for _ in range(steps):
        nxt = []
        for v in frontier:
            for w in geom.nbr.get(v, {}).values():
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


# --- line certificates ------------------------------------------------------------

@dataclass
class LineCertificate:
    line: HorizontalLine
    completions: object
    turns: dict  # endpoint -> list of (outside arrow, hypothesis holds)

    @property
    def four_vertex_ends(self) -> bool:
        return self.completions.ok

    @property
    def turns_ok(self) -> bool:
        return all(any(ok for _, ok in arrows) for arrows in self.turns.values())

    @property
    def ok(self) -> bool:
        return self.four_vertex_ends and self.turns_ok

    def to_dict(self):
        return {"line": self.line.to_dict(), "completions": self.completions.to_dict(),
                "turns": {str(list(e)): [[[list(a[0]), list(a[1])], ok] for a, ok in arrows]
                          for e, arrows in self.turns.items()},
                "four_vertex_ends": self.four_vertex_ends, "turns_ok": self.turns_ok,
                "ok": self.ok}


def certify_periodic_line(ctx, line: HorizontalLine, conv: BaseConvention | None = None,
                          big=None) -> LineCertificate:
    """Endpoint completions from the census plus the truncation hypothesis at each end."""
    conv = determine_base_convention() if conv is None else conv
    big = generate_patch(max(12, ctx.level + 3)) if big is None else big
    comp = certify_line_endpoints(line, ctx.classes, big, conv)
    turns = {}
    for e in line.endpoints:
        arrows = [a for a in outside_arrows(ctx.geometry, ctx.vertices, e)
                  if _direction(ctx.geometry, *a) not in VERTICAL]
        turns[e] = [(a, truncation_hypothesis(ctx.geometry, ctx.vertices, *a)) for a in arrows]
    return LineCertificate(line, comp, turns)


def _direction(geom, u, w):
    return [k for k, x in geom.nbr[u].items() if x == w][0]


# --- orbits along a line ------------------------------------------------------------

def horizontal_arrows(geom, line: HorizontalLine) -> list:
    L = set(line.vertices)
    return sorted((u, w) for u in L for d, w in geom.nbr[u].items() if d not in VERTICAL and w in L)


def line_catalogue(ring, line: HorizontalLine) -> list:
    """Modules that may occur along ``L``: arrow modules, sums and pairs of them, turns."""
    geom = ring.alg.geom
    arrows = horizontal_arrows(geom, line)
    out = []
    for a in arrows:
        out.append(("arrow", (a,), mc.path_module(ring, (a,))[0]))
    for i, a in enumerate(arrows):
        for c in arrows[i + 1:]:
            if a[0] == c[0]:
                out.append(("arrow sum", (a, c), mc.path_module(ring, (a,), (c,))[0]))
            if a[1] == c[1]:
                out.append(("arrow pair", (a, c), mc.tuple_module(ring, [(a,), (c,)])[0]))
    for e in line.endpoints:
        for h in outside_arrows(geom, ring.V, e):
            if _direction(geom, *h) in VERTICAL:
                continue
            loop = (h, (h[1], h[0]))
            out.append(("turn", loop, mc.path_module(ring, loop)[0]))
    return out


def _tag(M, catalogue):
    for name, words, N in catalogue:
        if N.dims == M.dims and mc.is_isomorphic(M, N):
            return name, words
    return None, None


@dataclass
class TurnCheck:
    endpoint: tuple
    arrow_in: tuple
    turn: tuple
    step: int | None
    omega_in_A: bool
    omega_is_turn: bool
    omega2_is_reverse: bool

    @property
    def ok(self) -> bool:
        return self.step is not None and self.omega_in_A and self.omega_is_turn and self.omega2_is_reverse

    def to_dict(self):
        return {"endpoint": list(self.endpoint), "arrow_in": [list(v) for v in self.arrow_in],
                "turn_arrow": [list(v) for v in self.turn], "step": self.step,
                "omega_in_A_is_hA": self.omega_in_A, "omega_is_h_hbar": self.omega_is_turn,
                "omega2_is_reverse_arrow": self.omega2_is_reverse, "ok": self.ok}


@dataclass
class LineOrbitReport:
    line: HorizontalLine
    start: tuple
    orbit: mc.OmegaOrbit = field(repr=False)
    tags: list
    turns: list

    @property
    def width(self) -> int:
        return self.line.width

    @property
    def expected_period(self) -> int:
        return 2 * self.width + 2

    @property
    def period(self):
        return self.orbit.period

    @property
    def along_line(self) -> bool:
        L = set(self.line.vertices)
        tops_ok = all(set(mc.top_dims(M)) <= L for M in self.orbit.terms)
        return tops_ok and all(t is not None for t, _ in self.tags)

    @property
    def ok(self) -> bool:
        return (self.period == self.expected_period and self.along_line
                and len(self.turns) == 2 and all(t.ok for t in self.turns))

    def to_dict(self):
        return {"line": self.line.to_dict(), "start": [list(v) for v in self.start],
                "width": self.width, "expected_period": self.expected_period,
                "period": self.period, "stopped": self.orbit.stopped,
                "dims": self.orbit.dim_sequence(),
                "tags": [t for t, _ in self.tags], "along_line": self.along_line,
                "turns": [t.to_dict() for t in self.turns], "ok": self.ok}


def endpoint_arrow(geom, line: HorizontalLine, end: int = 0) -> tuple:
    """The horizontal arrow of ``L`` leaving the chosen endpoint."""
    e = line.endpoints[end]
    L = set(line.vertices)
    return next((e, w) for d, w in sorted(geom.nbr[e].items()) if d not in VERTICAL and w in L)


def line_orbit(ctx, line: HorizontalLine, end: int = 0, max_dim: int = LINE_MODULE_DIM_CAP,
               classify: bool = True) -> LineOrbitReport:
    ring, full = ctx.ring, ctx.full
    geom = ctx.geometry
    b = endpoint_arrow(geom, line, end)
    M, _ = mc.path_module(ring, (b,))
    orbit = mc.omega_orbit(M, max_steps=2 * line.width + 6, max_dim=max_dim)
    tags = []
    if classify:
        cat = line_catalogue(ring, line)
        tags = [_tag(T, cat) for T in orbit.terms]
    turns = []
    if orbit.period is not None:
        turns = [turn_check(ctx, line, e, orbit) for e in line.endpoints]
    return LineOrbitReport(line, b, orbit, tags, turns)


def turn_check(ctx, line: HorizontalLine, e, orbit: mc.OmegaOrbit) -> TurnCheck:
    """The two steps at endpoint ``e``: ``Ω(bA_i) ≅ h h̄ A_i`` and ``Ω²(bA_i) ≅ b̄A_i``."""
    ring, full = ctx.ring, ctx.full
    geom = ctx.geometry
    L = set(line.vertices)
    u = next(w for d, w in sorted(geom.nbr[e].items()) if d not in VERTICAL and w in L)
    b = (u, e)
    hs = [h for h in outside_arrows(geom, ring.V, e) if _direction(geom, *h) not in VERTICAL]
    bA, _ = mc.path_module(ring, (b,))
    p = len(orbit.terms)
    step = next((j for j, T in enumerate(orbit.terms)
                 if T.dims == bA.dims and mc.is_isomorphic(T, bA)), None)
    # Ω(bA) = hA over A itself
    omega_A = mc.syzygy(mc.path_module(full, (b,))[0])
    h = next((h for h in hs if mc.is_isomorphic(omega_A, mc.path_module(full, (h,))[0])), None)
    if h is None or step is None:
        return TurnCheck(e, b, hs[0] if hs else (), step, h is not None, False, False)
    turn, _ = mc.path_module(ring, (h, (h[1], h[0])))
    rev, _ = mc.path_module(ring, ((e, u),))
    nxt, nxt2 = orbit.terms[(step + 1) % p], orbit.terms[(step + 2) % p]
    return TurnCheck(e, b, h, step, True, mc.is_isomorphic(nxt, turn), mc.is_isomorphic(nxt2, rev))


# --- stable homs into simples --------------------------------------------------------

@dataclass
class SimpleDetection:
    line: HorizontalLine
    period: int
    hits: dict  # vertex -> list of t with stable_hom(Ω^{-t} W, S_x) != 0

    @property
    def detected(self) -> set:
        return {x for x, ts in self.hits.items() if ts}

    @property
    def ok(self) -> bool:
        return self.detected == set(self.line.vertices)

    def to_dict(self):
        L = set(self.line.vertices)
        return {"line": self.line.to_dict(), "period": self.period,
                "detected": [list(x) for x in sorted(self.detected)],
                "missed_on_line": [list(x) for x in sorted(L - self.detected)],
                "detected_off_line": [list(x) for x in sorted(self.detected - L)],
                "ok": self.ok}


def simple_detection(ring, W: mc.Module, line: HorizontalLine, period: int) -> SimpleDetection:
    """``stable_hom(Ω^{-t} W, S_x)`` for every vertex ``x`` of the ring and ``0 <= t < period``.

    Hom into a simple vanishes unless ``x`` is in the top, so only those pairs
    need the stable computation; all others are recorded as zero.
    """
    hits = {x: [] for x in sorted(ring.V)}
    cur = W
    for t in range(period):
        for x, d in mc.top_dims(cur).items():
            if d and mc.stable_hom_dim(cur, mc.simple(ring, x)):
                hits[x].append(t)
        cur = mc.cosyzygy(cur)
    return SimpleDetection(line, period, hits)
