"""Local construction of the rhombal algebra and its truncations.

The algebra is the path algebra of the double quiver modulo a homogeneous
ideal generated in degree two.  For a fixed source ``x`` the graded pieces of
``e_x A`` are computed one degree at a time:

    A_d = (A_{d-1} (x) arrows) / (A_{d-2} (x) relations)

which yields a basis of every ``e_x A e_y`` together with the matrices of
right multiplication by each arrow.  Basis elements remember a path word so
that left multiplication (and the action of any path) can be replayed.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraError, ConfigError
from .linalg import Field
from .quiver import Geometry

MAX_DEGREE = 12
SAFE_RADIUS = 4


# --- signs -------------------------------------------------------------------

def _triple(s1, s2):
    e_vert, e_fwd = -s1, s2
    return (e_vert, e_vert * e_fwd, e_fwd)


def _parity_s(v):
    m, n = v
    return (-1) ** (m % 2), (-1) ** ((m + n) % 2)


SIGN_SCHEMES = {
    # crossing a p(e2)-edge flips both star coefficients, a p(e3)-edge flips s2
    "parity": lambda v: _triple(*_parity_s(v)),
    "parity-flip": lambda v: _triple(-_parity_s(v)[0], _parity_s(v)[1]),
    # translation-invariant choices; these fail validation
    "uniform": lambda v: _triple(-1, 1),
    "all-plus": lambda v: (1, 1, 1),
}


@dataclass
class SignAssignment:
    """Per-vertex triples ``(eps_vert, eps_back, eps_fwd)`` with product one.

    ``scheme`` names the generating rule so it can be rebuilt on any patch;
    ``overrides`` pins individual vertices (used for corruption tests).
    """

    scheme: str = "parity"
    overrides: dict = field(default_factory=dict)

    def triple(self, v) -> tuple[int, int, int]:
        if v in self.overrides:
            return self.overrides[v]
        return SIGN_SCHEMES[self.scheme](v)

    def star_coefficients(self, v) -> tuple[int, int]:
        """Return ``(s1, s2)`` with ``D1 = s1 D0`` and ``D2 = s2 D0``.

        ``Dj`` is ``t_j - t_{j+3}`` where ``t_j`` is the two-cycle through the
        neighbour in direction ``j`` (directions counted counter-clockwise from
        ``p(e2)``).
        """
        e_vert, _, e_fwd = self.triple(v)
        return -e_vert, e_fwd

    def check_products(self, vertices) -> list:
        return [v for v in vertices if np.prod(self.triple(v)) != 1]

    def to_dict(self):
        return {
            "scheme": self.scheme,
            "overrides": [[list(v), list(t)] for v, t in sorted(self.overrides.items())],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["scheme"], {tuple(v): tuple(t) for v, t in d.get("overrides", [])})


def default_signs(q=None, scheme: str = "parity") -> SignAssignment:
    if scheme not in SIGN_SCHEMES:
        raise ConfigError(f"unknown sign scheme {scheme!r}")
    return SignAssignment(scheme)


# --- relations -----------------------------------------------------------------

def quadratic_relations(geom: Geometry, signs: SignAssignment, allowed=None):
    """Degree-two relations indexed by start vertex.

    Returns ``{u: [((u, w), {v: coeff, ...}), ...]}``: each relation is a
    combination of paths ``u -> v -> w``.  ``allowed`` restricts the arrow
    set and terms through missing arrows are dropped; rhombus incidence and the
    star layout always come from ``geom``.
    """
    def ok(a, b):
        return allowed is None or (a, b) in allowed

    rels = defaultdict(list)
    for v in geom.vertices():
        nb = geom.nbr[v]
        for u in nb.values():
            if not ok(u, v):
                continue
            for w in nb.values():
                if u == w or not ok(v, w):
                    continue
                y = geom.common_rhombus(v, u, w)
                if y is not None and ok(u, y) and ok(y, w):
                    rels[u].append(((u, w), {v: 1, y: -1}))   # mirror
                else:
                    rels[u].append(((u, w), {v: 1}))          # two-rhombus
        s1, s2 = signs.star_coefficients(v)
        t = {d: x for d, x in nb.items() if ok(v, x) and ok(x, v)}

        def diff(j):
            out = Counter()
            if j in t:
                out[t[j]] += 1
            if j + 3 in t:
                out[t[j + 3]] -= 1
            return out

        d0 = diff(0)
        for dj, s in ((diff(1), s1), (diff(2), s2)):
            rel = Counter(dj)
            for key, c in d0.items():
                rel[key] -= s * c
            rel = {k: c for k, c in rel.items() if c != 0}
            if rel:
                rels[v].append(((v, v), rel))
    return rels


# --- projective data ------------------------------------------------------------

@dataclass
class Projective:
    """Graded basis of ``e_x A`` with right multiplication by arrows."""

    source: tuple
    basis: list  # (degree, target, word)
    mult: dict  # arrow (u, w) -> dense matrix dim x dim
    by_target: dict

    @property
    def dim(self):
        return len(self.basis)

    def component(self, y, degree=None):
        idx = self.by_target.get(y, [])
        if degree is None:
            return list(idx)
        return [i for i in idx if self.basis[i][0] == degree]

    def graded_dims(self, y):
        c = Counter(self.basis[i][0] for i in self.by_target.get(y, []))
        return dict(sorted(c.items()))

    def dim_vector(self):
        return {y: len(ix) for y, ix in self.by_target.items()}

    def top_degree(self):
        return max(b[0] for b in self.basis)


class LocalAlgebra:
    """The rhombal algebra on a finite window of the quiver.

    ``geom`` supplies rhombus incidences; ``allowed`` (a set of arrows)
    restricts the quiver, as for the relation-truncated algebras.  Sources
    whose radius-4 ball has complete stars in ``geom`` (see :meth:`safe`)
    give components that agree with the infinite algebra.
    """

    def __init__(self, geom: Geometry, signs: SignAssignment, field: Field, allowed=None,
                 max_degree: int = MAX_DEGREE):
        self.geom = geom
        self.signs = signs
        self.field = field
        self.allowed = allowed
        self.max_degree = max_degree
        self._rels = None
        self._proj: dict = {}
        self._safe: dict = {}

    @property
    def relations(self):
        if self._rels is None:
            self._rels = quadratic_relations(self.geom, self.signs, self.allowed)
        return self._rels

    def out_arrows(self, u):
        nb = self.geom.nbr.get(u, {})
        return [(u, w) for d, w in sorted(nb.items())
                if self.allowed is None or (u, w) in self.allowed]

    def has_arrow(self, u, w):
        if w not in self.geom.nbr.get(u, {}).values():
            return False
        return self.allowed is None or (u, w) in self.allowed

    def safe(self, x, radius: int = SAFE_RADIUS) -> bool:
        """True if every vertex within ``radius`` of ``x`` has a complete star."""
        key = (x, radius)
        hit = self._safe.get(key)
        if hit is None:
            g = self.geom
            seen = {x}
            frontier = [x]
            hit = True
            for _ in range(radius + 1):
                nxt = []
                for v in frontier:
                    if not g.full(v):
                        hit = False
                        break
                    for w in g.nbr[v].values():
                        if w not in seen:
                            seen.add(w)
                            nxt.append(w)
                if not hit:
                    break
                frontier = nxt
            self._safe[key] = hit
        return hit

    def projective(self, x) -> Projective:
        pr = self._proj.get(x)
        if pr is None:
            pr = self._build(x)
            self._proj[x] = pr
        return pr

    def _build(self, x) -> Projective:
        F = self.field
        rels = self.relations
        layers = [[(x, ())]]
        steps = []  # steps[d]: arrow -> matrix (layer d) x (layer d+1)
        for d in range(1, self.max_degree + 1):
            prev = layers[d - 1]
            gens = []
            gen_index = {}
            for bi, (tgt, _) in enumerate(prev):
                for a in self.out_arrows(tgt):
                    gen_index[(bi, a)] = len(gens)
                    gens.append((bi, a))
            if not gens:
                break
            rel_by_t = defaultdict(list)
            if d >= 2:
                mult_prev = steps[d - 2]
                for gi, (tgt, _) in enumerate(layers[d - 2]):
                    for (u, w), rel in rels.get(tgt, ()):
                        row = {}
                        for v, c in rel.items():
                            m = mult_prev.get((u, v))
                            if m is None:
                                continue
                            coords = m[gi]
                            for bj in np.nonzero(coords)[0]:
                                key = gen_index.get((int(bj), (v, w)))
                                if key is not None:
                                    row[key] = row.get(key, 0) + c * coords[bj]
                        if row:
                            rel_by_t[w].append(row)
            by_t = defaultdict(list)
            for gi, (bi, a) in enumerate(gens):
                by_t[a[1]].append(gi)
            new_layer = []
            coord_of = {}
            for t in sorted(by_t):
                cols = by_t[t]
                local = {g: i for i, g in enumerate(cols)}
                rows = rel_by_t.get(t, [])
                if rows:
                    mat = F.zeros(len(rows), len(cols))
                    for r, row in enumerate(rows):
                        for g, c in row.items():
                            mat[r, local[g]] += F.scalar(c)
                    red, piv = F.rref(mat)
                else:
                    red, piv = F.zeros(0, len(cols)), np.array([], dtype=np.int64)
                pivset = {int(p) for p in piv}
                free = [c for c in range(len(cols)) if c not in pivset]
                base = len(new_layer)
                for k, c in enumerate(free):
                    bi, a = gens[cols[c]]
                    new_layer.append((t, prev[bi][1] + (a,)))
                    coord_of[cols[c]] = [(base + k, F.scalar(1))]
                for r, pc in enumerate(piv):
                    coord_of[cols[int(pc)]] = [
                        (base + k, F.neg(red[r, c])) for k, c in enumerate(free) if red[r, c] != 0
                    ]
            mult = {}
            for gi, (bi, a) in enumerate(gens):
                m = mult.get(a)
                if m is None:
                    m = F.zeros(len(prev), len(new_layer))
                    mult[a] = m
                for j, c in coord_of[gi]:
                    m[bi, j] = c
            if not new_layer:
                break
            steps.append(mult)
            layers.append(new_layer)
        if len(layers) - 1 > 5 and self.allowed is None:
            raise AlgebraError(f"nonzero paths of length {len(layers) - 1} at {x}")
        return self._assemble(x, layers, steps)

    def _assemble(self, x, layers, steps):
        F = self.field
        basis = []
        offsets = []
        for d, layer in enumerate(layers):
            offsets.append(len(basis))
            for tgt, word in layer:
                basis.append((d, tgt, word))
        n = len(basis)
        mult = {}
        for d, layer_mult in enumerate(steps):
            for a, m in layer_mult.items():
                big = mult.get(a)
                if big is None:
                    big = F.zeros(n, n)
                    mult[a] = big
                o0, o1 = offsets[d], offsets[d + 1]
                big[o0:o0 + m.shape[0], o1:o1 + m.shape[1]] = m
        by_target = defaultdict(list)
        for i, (d, t, w) in enumerate(basis):
            by_target[t].append(i)
        return Projective(x, basis, mult, dict(by_target))

    # --- element arithmetic ------------------------------------------------------

    def unit(self, x):
        pr = self.projective(x)
        e = self.field.zeros(1, pr.dim)[0]
        e[0] = 1
        return e

    def act_word(self, x, vec, word):
        """Right-multiply an element of ``e_x A`` by a path word."""
        pr = self.projective(x)
        for a in word:
            m = pr.mult.get(a)
            if m is None:
                return self.field.zeros(1, pr.dim)[0]
            vec = self.field.matmul(vec[None, :], m)[0]
        return vec

    def path_element(self, word, start=None):
        """Coordinates of a path in ``e_x A`` where ``x`` is its start."""
        x = word[0][0] if word else start
        return x, self.act_word(x, self.unit(x), word)

    def left_matrix(self, word, x):
        """Matrix of ``v -> path * v`` from ``e_x A`` to ``e_s A``; the path runs s -> ... -> x."""
        F = self.field
        s = word[0][0] if word else x
        if word and word[-1][1] != x:
            raise ValueError("path does not end at x")
        pr_x = self.projective(x)
        pr_s = self.projective(s)
        _, pe = self.path_element(word, start=s)
        out = F.zeros(pr_x.dim, pr_s.dim)
        for j, (_, _, w) in enumerate(pr_x.basis):
            out[j] = self.act_word(s, pe, w)
        return out

    def is_zero_path(self, word) -> bool:
        _, v = self.path_element(word)
        return self.field.is_zero(v)

    def dims(self, x, y):
        return self.projective(x).graded_dims(y)


# --- truncations ----------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """An algebra generator of the truncation: an arrow or an excursion path class."""

    gid: int
    src: tuple
    tgt: tuple
    word: tuple

    @property
    def degree(self):
        return len(self.word)


class TruncatedAlgebra:
    """``e A e`` for the idempotent ``e`` of a vertex set ``V``.

    Variant ``"A"`` (``A_i``) keeps all paths of the ambient algebra that start
    and end in ``V``; it is generated by arrows inside ``V`` together with
    excursion paths whose interior vertices lie outside ``V``.  Variant ``"B"``
    wraps an algebra already built on the truncated quiver, so its generators
    are just the arrows.
    """

    def __init__(self, alg: LocalAlgebra, vertices, variant: str = "A"):
        self.alg = alg
        self.field = alg.field
        self.V = frozenset(vertices)
        self.variant = variant
        self._gens: list[Generator] = []
        self._from: dict = {}
        self._express: dict = {}
        self._arrow_id: dict = {}
        self._segments: dict = {}
        self._proj_modules: dict = {}

    def __contains__(self, v):
        return v in self.V

    @property
    def generators(self):
        return self._gens

    def generators_from(self, x) -> list[Generator]:
        out = self._from.get(x)
        if out is None:
            out = self._make_generators(x)
            self._from[x] = out
        return out

    def _excursions(self, x, max_len=4):
        """Words from ``x`` back into ``V`` through outside vertices only."""
        out = []
        stack = [((x, w),) for w in self.alg.geom.nbr.get(x, {}).values()
                 if w not in self.V and self.alg.has_arrow(x, w)]
        while stack:
            word = stack.pop()
            end = word[-1][1]
            for a in self.alg.out_arrows(end):
                nw = word + (a,)
                if a[1] in self.V:
                    out.append(nw)
                elif len(nw) < max_len:
                    stack.append(nw)
        return sorted(out)

    def _make_generators(self, x) -> list[Generator]:
        if x not in self.V:
            return []
        F = self.field
        gens = []
        for a in self.alg.out_arrows(x):
            if a[1] in self.V:
                gens.append(self._add(x, a[1], (a,)))
        if self.variant == "A":
            by_tgt = defaultdict(list)
            for w in self._excursions(x):
                by_tgt[w[-1][1]].append(w)
            for y, words in sorted(by_tgt.items()):
                chosen = F.zeros(0, self.alg.projective(x).dim)
                for w in words:
                    _, vec = self.alg.path_element(w)
                    if F.is_zero(vec):
                        continue
                    cand = F.concat_rows(chosen, vec[None, :])
                    if F.rank(cand) > chosen.shape[0]:
                        chosen = cand
                        gens.append(self._add(x, y, w))
        return gens

    def _add(self, x, y, word):
        g = Generator(len(self._gens), x, y, word)
        self._gens.append(g)
        if len(word) == 1:
            self._arrow_id[word[0]] = g.gid
        return g

    def arrow_gid(self, a):
        """Generator id of an arrow between vertices of ``V`` (None if absent)."""
        if a not in self._arrow_id:
            self.generators_from(a[0])
        return self._arrow_id.get(a)

    def word_in_generators(self, word):
        """A path between ``V``-vertices as a list of generator combinations, one per segment."""
        hit = self._segments.get(word)
        if hit is None:
            hit = [self.express(seg) for seg in self.segments(word)]
            self._segments[word] = hit
        return hit

    def express(self, word):
        """Write the class of an excursion word (V to V) in terms of generators."""
        hit = self._express.get(word)
        if hit is not None:
            return hit
        x, y = word[0][0], word[-1][1]
        F = self.field
        cands = [g for g in self.generators_from(x) if g.tgt == y and g.degree == len(word)]
        if len(word) == 1 and cands:
            res = [(g, F.scalar(1)) for g in cands if g.word == word]
            if res:
                self._express[word] = res
                return res
        _, vec = self.alg.path_element(word)
        if F.is_zero(vec):
            res = []
        else:
            basis = np.stack([self.alg.path_element(g.word)[1] for g in cands]) if cands else F.zeros(0, len(vec))
            coeffs = F.solve_rows(basis, vec[None, :])[0]
            res = [(g, c) for g, c in zip(cands, coeffs) if c != 0]
        self._express[word] = res
        return res

    def segments(self, word):
        """Split a path at its visits to ``V`` (interior visits only)."""
        segs = []
        cur = []
        for a in word:
            cur.append(a)
            if a[1] in self.V:
                segs.append(tuple(cur))
                cur = []
        if cur:
            raise ValueError("word does not end in V")
        return segs

    def projective_basis(self, z):
        """Indices of the ``e_z A`` basis with target in ``V`` (a basis of ``e_z A e``)."""
        pr = self.alg.projective(z)
        return [i for i, b in enumerate(pr.basis) if b[1] in self.V]

    def dim_component(self, x, y):
        if x not in self.V or y not in self.V:
            return 0
        return len(self.alg.projective(x).by_target.get(y, []))


def truncate_A(alg: LocalAlgebra, vertices) -> TruncatedAlgebra:
    return TruncatedAlgebra(alg, vertices, "A")


def full_view(alg: LocalAlgebra) -> TruncatedAlgebra:
    """The whole window as a ring; only projectives at safe vertices are faithful to A."""
    return TruncatedAlgebra(alg, alg.geom.vertices(), "A")


def build_B(quiver, geom: Geometry, signs: SignAssignment, field: Field) -> TruncatedAlgebra:
    """Relations imposed on the truncated quiver, missing arrows set to zero."""
    allowed = set(quiver.arrows)
    alg = LocalAlgebra(geom, signs, field, allowed=allowed)
    return TruncatedAlgebra(alg, quiver.vertices, "B")


# --- validation -------------------------------------------------------------------

X_DIM_TABLE = {3: 1, 4: 2, 5: 3, 6: 4}


@dataclass
class ValidationReport:
    ok: bool
    checked: int
    failures: list

    def to_dict(self):
        return {"ok": self.ok, "checked": self.checked,
                "failures": [[list(v), msg] for v, msg in self.failures[:50]]}


def rhombus_loop(geom: Geometry, z):
    """A length-four path around one rhombus at ``z`` (as a word)."""
    d1, d2, opp, _ = geom.rhombi_at[z][0]
    x1, x2 = geom.nbr[z][d1], geom.nbr[z][d2]
    return ((z, x1), (x1, opp), (opp, x2), (x2, z))


def validate_algebra(alg: LocalAlgebra, vertices) -> ValidationReport:
    """Dimension and socle checks at vertices whose neighbourhoods are complete."""
    F = alg.field
    g = alg.geom
    fails = []
    checked = 0
    bad_sign = alg.signs.check_products(vertices)
    for v in bad_sign:
        fails.append((v, "sign triple product is not 1"))
    for z in vertices:
        if not alg.safe(z):
            continue
        checked += 1
        n = g.degree(z)
        try:
            pr = alg.projective(z)
        except AlgebraError as exc:
            fails.append((z, str(exc)))
            continue
        if pr.dim != 4 * n:
            fails.append((z, f"dim e_zA = {pr.dim}, expected {4 * n}"))
        if pr.graded_dims(z) != {0: 1, 2: n - 2, 4: 1}:
            fails.append((z, f"e_zAe_z graded dims {pr.graded_dims(z)}"))
        if pr.graded_dims(z).get(2, 0) != X_DIM_TABLE.get(n):
            fails.append((z, f"dim X_z = {pr.graded_dims(z).get(2, 0)} for a {n}-vertex"))
        for x in g.nbr[z].values():
            if pr.graded_dims(x) != {1: 1, 3: 1}:
                fails.append((z, f"e_zAe_x dims {pr.graded_dims(x)} for neighbour {x}"))
            if alg.safe(x) and len(alg.projective(x).by_target.get(z, [])) != len(pr.by_target.get(x, [])):
                fails.append((z, f"dim asymmetry with {x}"))
        for d1, d2, opp, _ in g.rhombi_at[z]:
            if pr.graded_dims(opp) != {2: 1}:
                fails.append((z, f"e_zAe_y dims {pr.graded_dims(opp)} for opposite corner {opp}"))
        if pr.top_degree() > 4:
            fails.append((z, "nonzero degree-5 component"))
        # socle: elements killed by every arrow
        soc = F.nullspace(np.concatenate(list(pr.mult.values()), axis=1))
        top_deg = [i for i, b in enumerate(pr.basis) if b[0] == 4]
        if soc.shape[0] != 1 or len(top_deg) != 1 or F.is_zero(soc[0, top_deg]):
            fails.append((z, f"socle of e_zA has dimension {soc.shape[0]}"))
        else:
            _, loop = alg.path_element(rhombus_loop(g, z))
            if F.is_zero(loop):
                fails.append((z, "rhombus loop vanishes"))
    return ValidationReport(not fails, checked, fails)


def symmetry_witness(trunc: TruncatedAlgebra, vertices=None) -> dict:
    """Try to build a symmetrising form supported on the degree-4 socle.

    Unknowns are scalars ``c_z`` (the form's value on the socle generator of
    ``e_z A e_z``); we impose ``f(ab) = f(ba)`` on basis pairs and test the
    pairing ``e_x A e_y x e_y A e_x -> k`` for nondegeneracy.
    """
    alg = trunc.alg
    F = trunc.field
    verts = sorted(trunc.V if vertices is None else vertices)
    index = {v: i for i, v in enumerate(verts)}
    soc_idx = {}
    for z in verts:
        pr = alg.projective(z)
        top = [i for i in pr.by_target.get(z, []) if pr.basis[i][0] == pr.top_degree()]
        if len(top) != 1 or pr.top_degree() == 0:
            return {"ok": False, "reason": f"e_zAe_z at {z} has no one-dimensional top degree"}
        soc_idx[z] = top[0]
    eqs = []
    pairings = []
    for x in verts:
        prx = alg.projective(x)
        for y in prx.by_target:
            if y not in index or y < x:
                continue
            pry = alg.projective(y)
            ix = prx.by_target.get(y, [])
            iy = pry.by_target.get(x, [])
            if len(ix) != len(iy):
                return {"ok": False, "reason": f"dim e_xAe_y != dim e_yAe_x for {x}, {y}"}
            gx = F.zeros(len(ix), len(iy))
            gy = F.zeros(len(ix), len(iy))
            for r, i in enumerate(ix):
                a = _basis_vec(F, prx.dim, i)
                for c, j in enumerate(iy):
                    ab = alg.act_word(x, a, pry.basis[j][2])
                    ba = alg.act_word(y, _basis_vec(F, pry.dim, j), prx.basis[i][2])
                    gx[r, c] = ab[soc_idx[x]]
                    gy[r, c] = ba[soc_idx[y]]
                    if ab[soc_idx[x]] != 0 or ba[soc_idx[y]] != 0:
                        row = F.zeros(1, len(verts))[0]
                        row[index[x]] = ab[soc_idx[x]]
                        row[index[y]] = F.neg(ba[soc_idx[y]]) if x != y else row[index[y]] - ba[soc_idx[y]]
                        eqs.append(row)
            pairings.append((x, y, gx, gy))
    sol = F.right_nullspace(np.stack(eqs)) if eqs else F.eye(len(verts))
    if sol.shape[0] == 0:
        return {"ok": False, "reason": "no form vanishes on commutators"}
    rng = np.random.default_rng(0)
    for _ in range(10):
        c = F.matmul(F.random_vector(rng, sol.shape[0])[None, :], sol)[0]
        if any(c[i] == 0 for i in range(len(verts))):
            continue
        good = True
        for x, y, gx, _ in pairings:
            if gx.shape[0] and F.rank(F.scale(c[index[x]], gx)) < gx.shape[0]:
                good = False
                break
        if good:
            return {"ok": True, "form_dim": int(sol.shape[0])}
    return {"ok": False, "reason": "no nondegenerate symmetrising form found"}


def _basis_vec(F, n, i):
    v = F.zeros(1, n)[0]
    v[i] = 1
    return v


# --- loops ------------------------------------------------------------------------

def loop_space(trunc: TruncatedAlgebra, z):
    """``(dim X_z, dim rad^2 A_i ∩ X_z, loop words)`` at a vertex of the truncation."""
    alg = trunc.alg
    F = trunc.field
    pr = alg.projective(z)
    xz = pr.component(z, 2)
    inside = []
    outside = []
    for w in alg.geom.nbr[z].values():
        if not alg.has_arrow(z, w):
            continue
        word = ((z, w), (w, z))
        _, vec = alg.path_element(word)
        (inside if w in trunc.V else outside).append((word, vec[xz]))
    rad2 = np.stack([v for _, v in inside]) if inside else F.zeros(0, len(xz))
    r2 = F.rank(rad2) if inside else 0
    loops = []
    span = rad2
    for word, v in outside:
        cand = F.concat_rows(span, v[None, :])
        if F.rank(cand) > (span.shape[0] and F.rank(span)):
            loops.append(word)
            span = cand
    return len(xz), r2, loops


def find_loops(trunc: TruncatedAlgebra, classes=None) -> dict:
    """Vertex -> list of loop words (excursions b b-bar not in rad^2)."""
    out = {}
    for z in sorted(trunc.V):
        dx, r2, loops = loop_space(trunc, z)
        if loops:
            out[z] = loops
    return out


# --- B_1 --------------------------------------------------------------------------

@dataclass
class B1Report:
    vertex: tuple
    dim: int
    loewy_length: int
    top: dict
    socle: dict
    socle_path: tuple
    socle_path_killed: bool
    symmetric_form: dict

    @property
    def ok(self) -> bool:
        return (self.socle_path_killed and self.loewy_length <= 3
                and self.socle != self.top and self.top == {self.vertex: 1})

    def to_dict(self):
        return {"vertex": list(self.vertex), "dim": self.dim, "loewy_length": self.loewy_length,
                "top": [[list(x), d] for x, d in sorted(self.top.items())],
                "socle": [[list(x), d] for x, d in sorted(self.socle.items())],
                "socle_path": [[list(a), list(b)] for a, b in self.socle_path],
                "socle_path_killed": self.socle_path_killed,
                "symmetric_form": self.symmetric_form, "ok": self.ok}


def check_B1_not_symmetric(B: TruncatedAlgebra, classes: dict) -> B1Report:
    """Projective at the (2,5)-vertex of ``B_1``: short Loewy series, socle unlike top.

    ``classes`` is the (k, n) classification of the truncated quiver.
    """
    from . import modcalc as mc

    z = next((v for v, c in sorted(classes.items()) if (c.k, c.n) == (2, 5)), None)
    if z is None:
        raise AlgebraError("no (2,5)-vertex in this quiver")
    g = B.alg.geom
    x3, x4 = sorted(w for w in g.nbr[z].values() if B.alg.has_arrow(z, w))
    y3 = g.common_rhombus(z, x3, x4)
    word = ((z, x3), (x3, y3))
    P = mc.projective(B, z)
    R, _ = mc.path_module(B, word)
    killed = R.dim == 1
    return B1Report(z, P.dim, mc.loewy_length(P), mc.top_dims(P), mc.socle_dims(P), word,
                    killed, symmetry_witness(B))
