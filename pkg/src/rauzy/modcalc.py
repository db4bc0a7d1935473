"""Finite-dimensional right modules over a truncated rhombal algebra.

A module is stored as a representation: a dimension ``dims[x]`` per vertex
and, for every generator ``g: x -> y`` of the ring, a block matrix of shape
``dims[x] x dims[y]`` acting on row vectors.  Submodules keep their inclusion
map, so modules living inside projectives (the usual situation) can be
compared as subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import TruncatedAlgebra

DEFAULT_SEED = 20240611
_seed = DEFAULT_SEED


def set_seed(seed: int) -> None:
    """Seed used by the randomised searches (isomorphisms, idempotents, filtrations)."""
    global _seed
    _seed = int(seed)


# --- containers ----------------------------------------------------------------

@dataclass
class Module:
    ring: TruncatedAlgebra = field(repr=False)
    dims: dict
    blocks: dict = field(repr=False)  # gid -> matrix
    name: str = ""

    @property
    def field(self):
        return self.ring.field

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> dict:
        return dict(sorted(self.dims.items()))

    def support(self):
        return sorted(self.dims)

    def gens_out(self, x):
        """Generators leaving ``x`` whose target is in the support."""
        return [g for g in self.ring.generators_from(x) if g.tgt in self.dims]

    def block(self, g):
        b = self.blocks.get(g.gid)
        if b is None:
            b = self.field.zeros(self.dims.get(g.src, 0), self.dims.get(g.tgt, 0))
        return b

    def act(self, x, rows, word):
        """Right action of a path (between ring vertices) on row vectors at ``x``."""
        F = self.field
        cur = x
        for combo in self.ring.word_in_generators(word):
            if not combo:
                tgt = word[-1][1]
                return F.zeros(rows.shape[0], self.dims.get(tgt, 0))
            tgt = combo[0][0].tgt
            out = F.zeros(rows.shape[0], self.dims.get(tgt, 0))
            for g, c in combo:
                if g.tgt in self.dims and rows.shape[1]:
                    out = F.add(out, F.scale(c, F.matmul(rows, self.block(g))))
            rows = out
            cur = tgt
        return rows

    def is_zero(self):
        return self.dim == 0

    def to_dict(self):
        return {"name": self.name, "dim": self.dim,
                "dim_vector": [[list(x), d] for x, d in sorted(self.dims.items())]}


@dataclass
class ModuleMap:
    src: Module = field(repr=False)
    dst: Module = field(repr=False)
    mats: dict  # x -> matrix dims_src[x] x dims_dst[x]

    @property
    def field(self):
        return self.src.field

    def mat(self, x):
        m = self.mats.get(x)
        if m is None:
            m = self.field.zeros(self.src.dims.get(x, 0), self.dst.dims.get(x, 0))
        return m

    def rank(self) -> int:
        return sum(self.field.rank(self.mat(x)) for x in self.src.dims)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.mats.values())

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self`` followed by ``other``."""
        F = self.field
        return ModuleMap(self.src, other.dst,
                         {x: F.matmul(self.mat(x), other.mat(x)) for x in self.src.dims if x in other.dst.dims})

    def is_homomorphism(self) -> bool:
        F = self.field
        for x in self.src.dims:
            for g in self.src.ring.generators_from(x):
                lhs = F.matmul(self.src.block(g), self.mat(g.tgt)) if g.tgt in self.src.dims else None
                rhs = F.matmul(self.mat(x), self.dst.block(g)) if g.tgt in self.dst.dims else None
                if lhs is None and rhs is None:
                    continue
                if lhs is None:
                    lhs = F.zeros(*rhs.shape)
                if rhs is None:
                    rhs = F.zeros(*lhs.shape)
                if not F.is_zero(F.sub(lhs, rhs)):
                    return False
        return True

    def is_injective(self) -> bool:
        return all(self.field.rank(self.mat(x)) == d for x, d in self.src.dims.items())

    def is_surjective(self) -> bool:
        return all(self.field.rank(self.mat(x)) == d for x, d in self.dst.dims.items())

    def is_iso(self) -> bool:
        return self.src.dims == self.dst.dims and self.is_injective()


def identity(M: Module) -> ModuleMap:
    return ModuleMap(M, M, {x: M.field.eye(d) for x, d in M.dims.items()})


def zero_map(M: Module, N: Module) -> ModuleMap:
    return ModuleMap(M, N, {})


def zero_module(ring) -> Module:
    return Module(ring, {}, {}, "0")


# --- constructions -------------------------------------------------------------

def projective(ring: TruncatedAlgebra, z) -> Module:
    """``e_z`` times the ring, with basis the path basis of ``e_zA`` restricted to ring vertices."""
    hit = ring._proj_modules.get(z)
    if hit is not None:
        return hit
    alg = ring.alg
    F = ring.field
    pr = alg.projective(z)
    idx = {x: [i for i in pr.by_target[x]] for x in pr.by_target if x in ring.V}
    dims = {x: len(ix) for x, ix in idx.items()}
    blocks = {}
    for x, ix in idx.items():
        for g in ring.generators_from(x):
            if g.tgt not in idx:
                continue
            m = F.zeros(len(ix), dims[g.tgt])
            cols = idx[g.tgt]
            for r, i in enumerate(ix):
                e = F.zeros(1, pr.dim)[0]
                e[i] = 1
                m[r] = alg.act_word(z, e, g.word)[cols]
            if not F.is_zero(m):
                blocks[g.gid] = m
    M = Module(ring, dims, blocks, f"P{z}")
    M.words = {x: [pr.basis[i][2] for i in ix] for x, ix in idx.items()}
    M.vertex = z
    ring._proj_modules[z] = M
    return M


def simple(ring: TruncatedAlgebra, z) -> Module:
    return Module(ring, {z: 1}, {}, f"S{z}")


def direct_sum(mods):
    """Return ``(S, injections, projections)``."""
    F = mods[0].field
    ring = mods[0].ring
    offs = []
    dims = {}
    for M in mods:
        o = {}
        for x, d in M.dims.items():
            o[x] = dims.get(x, 0)
            dims[x] = o[x] + d
        offs.append(o)
    blocks = {}
    for M, o in zip(mods, offs):
        for x in M.dims:
            for g in M.gens_out(x):
                b = M.blocks.get(g.gid)
                if b is None:
                    continue
                big = blocks.get(g.gid)
                if big is None:
                    big = F.zeros(dims[x], dims[g.tgt])
                    blocks[g.gid] = big
                big[o[x]:o[x] + b.shape[0], o[g.tgt]:o[g.tgt] + b.shape[1]] = b
    S = Module(ring, dims, blocks, "+".join(M.name for M in mods))
    inj, proj = [], []
    for M, o in zip(mods, offs):
        i_m, p_m = {}, {}
        for x, d in M.dims.items():
            a = F.zeros(d, dims[x])
            a[:, o[x]:o[x] + d] = F.eye(d)
            i_m[x] = a
            p_m[x] = a.T.copy()
        inj.append(ModuleMap(M, S, i_m))
        proj.append(ModuleMap(S, M, p_m))
    return S, inj, proj


def _closure(M: Module, spaces: dict) -> dict:
    """Smallest action-closed family of subspaces containing ``spaces``."""
    F = M.field
    cur = {x: F.rowspace(r) for x, r in spaces.items() if r.shape[0]}
    todo = list(cur)
    while todo:
        x = todo.pop()
        rows = cur[x]
        for g in M.gens_out(x):
            img = F.matmul(rows, M.block(g))
            if F.is_zero(img):
                continue
            old = cur.get(g.tgt)
            if old is None:
                cur[g.tgt] = F.rowspace(img)
                todo.append(g.tgt)
            elif not F.in_span(old, img):
                cur[g.tgt] = F.rowspace(F.concat_rows(old, img))
                todo.append(g.tgt)
    return {x: r for x, r in cur.items() if r.shape[0]}


def sub_from_spaces(M: Module, spaces: dict, name="") -> tuple[Module, ModuleMap]:
    """Module on already closed subspaces (rows in ``M``-coordinates) plus its inclusion."""
    F = M.field
    spaces = {x: r for x, r in spaces.items() if r.shape[0]}
    dims = {x: r.shape[0] for x, r in spaces.items()}
    blocks = {}
    for x, rows in spaces.items():
        for g in M.gens_out(x):
            if g.tgt not in spaces:
                continue
            img = F.matmul(rows, M.block(g))
            if F.is_zero(img):
                continue
            blocks[g.gid] = F.solve_rows(spaces[g.tgt], img)
    S = Module(M.ring, dims, blocks, name)
    return S, ModuleMap(S, M, dict(spaces))


def submodule(M: Module, gens: dict, name="") -> tuple[Module, ModuleMap]:
    """Submodule generated by ``gens`` (vertex -> rows)."""
    return sub_from_spaces(M, _closure(M, gens), name)


def quotient(M: Module, spaces: dict, name="") -> tuple[Module, ModuleMap]:
    """``M`` modulo a submodule given by closed subspaces; returns the projection too."""
    F = M.field
    comp = {}
    for x, d in M.dims.items():
        sub = spaces.get(x)
        sub = F.rowspace(sub) if sub is not None and sub.shape[0] else F.zeros(0, d)
        c = F.complement_basis(sub, d)
        if c.shape[0]:
            comp[x] = (sub, c)
    dims = {x: c.shape[0] for x, (_, c) in comp.items()}

    def coords(x, rows):
        sub, c = comp[x]
        basis = F.concat_rows(c, sub)
        full = F.solve_rows(basis, rows)
        return full[:, : c.shape[0]]

    blocks = {}
    for x, (_, c) in comp.items():
        for g in M.gens_out(x):
            if g.tgt not in comp:
                continue
            img = F.matmul(c, M.block(g))
            b = coords(g.tgt, img)
            if not F.is_zero(b):
                blocks[g.gid] = b
    Q = Module(M.ring, dims, blocks, name)
    proj = {x: coords(x, F.eye(M.dims[x])) for x in comp}
    return Q, ModuleMap(M, Q, proj)


def kernel(f: ModuleMap, name="") -> tuple[Module, ModuleMap]:
    F = f.field
    spaces = {x: F.nullspace(f.mat(x)) for x in f.src.dims}
    return sub_from_spaces(f.src, spaces, name)


def image_spaces(f: ModuleMap) -> dict:
    F = f.field
    return {x: F.rowspace(f.mat(x)) for x in f.src.dims if x in f.dst.dims}


def image(f: ModuleMap, name="") -> tuple[Module, ModuleMap]:
    return sub_from_spaces(f.dst, image_spaces(f), name)


def cokernel(f: ModuleMap, name="") -> tuple[Module, ModuleMap]:
    return quotient(f.dst, image_spaces(f), name)


def restrict_map(f: ModuleMap, src_incl: ModuleMap, dst_incl: ModuleMap) -> ModuleMap:
    """Induced map between submodules, given ``f`` on the ambients and both inclusions."""
    F = f.field
    mats = {}
    for x in src_incl.src.dims:
        img = F.matmul(src_incl.mat(x), f.mat(x))
        if x not in dst_incl.src.dims:
            if not F.is_zero(img):
                raise ValueError("image leaves the target submodule")
            continue
        mats[x] = F.solve_rows(dst_incl.mat(x), img)
    return ModuleMap(src_incl.src, dst_incl.src, mats)


# --- structure -----------------------------------------------------------------

def radical_spaces(M: Module) -> dict:
    F = M.field
    acc = {}
    for x in M.dims:
        for g in M.gens_out(x):
            b = M.blocks.get(g.gid)
            if b is None or F.is_zero(b):
                continue
            acc.setdefault(g.tgt, []).append(b)
    return {y: F.rowspace(np.concatenate(bs, axis=0)) for y, bs in acc.items()}


def socle_spaces(M: Module) -> dict:
    F = M.field
    out = {}
    for x, d in M.dims.items():
        bs = [M.blocks[g.gid] for g in M.gens_out(x) if g.gid in M.blocks]
        if bs:
            out[x] = F.nullspace(np.concatenate(bs, axis=1))
        else:
            out[x] = F.eye(d)
    return {x: r for x, r in out.items() if r.shape[0]}


def radical(M: Module):
    return sub_from_spaces(M, radical_spaces(M), f"rad {M.name}")


def socle(M: Module):
    return sub_from_spaces(M, socle_spaces(M), f"soc {M.name}")


def top(M: Module):
    return quotient(M, radical_spaces(M), f"top {M.name}")


def _dims_of(spaces):
    return {x: r.shape[0] for x, r in spaces.items() if r.shape[0]}


def top_dims(M: Module) -> dict:
    rad = _dims_of(radical_spaces(M))
    return {x: d - rad.get(x, 0) for x, d in M.dims.items() if d - rad.get(x, 0)}


def socle_dims(M: Module) -> dict:
    return _dims_of(socle_spaces(M))


def radical_series(M: Module) -> list[dict]:
    """Dimension vectors of the Loewy (radical) layers, top first."""
    layers = []
    cur = M
    while cur.dim:
        layers.append(top_dims(cur))
        cur, _ = radical(cur)
    return layers


def loewy_length(M: Module) -> int:
    return len(radical_series(M))


def socle_series(M: Module) -> list[dict]:
    """Closed subspaces ``soc^1 M ⊂ soc^2 M ⊂ ...`` in ``M``-coordinates."""
    F = M.field
    out = []
    cur = {}
    while sum(r.shape[0] for r in cur.values()) < M.dim:
        Q, pi = quotient(M, cur)
        soc = socle_spaces(Q)
        nxt = {}
        for x, d in M.dims.items():
            parts = []
            if x in cur:
                parts.append(cur[x])
            if x in soc:
                parts.append(_lift(F, pi.mat(x), soc[x]))
            if parts:
                nxt[x] = F.rowspace(np.concatenate(parts, axis=0))
        cur = nxt
        out.append(cur)
    return out


def _lift(F, proj, rows):
    """Preimages of ``rows`` under a surjective matrix ``proj`` (rows act on the right)."""
    return F.solve_rows(proj, rows)


# --- homomorphisms --------------------------------------------------------------

def _kron(F, a, b):
    out = np.kron(a, b)
    return F.asarray(out) if out.dtype != object else out


def hom_basis(M: Module, N: Module) -> list[ModuleMap]:
    """Basis of ``Hom(M, N)`` from the intertwining equations (row-major vec)."""
    F = M.field
    verts = [x for x in M.dims if x in N.dims]
    off = {}
    n = 0
    for x in verts:
        off[x] = n
        n += M.dims[x] * N.dims[x]
    if n == 0:
        return []
    rows = []
    for x in M.dims:
        for g in M.ring.generators_from(x):
            y = g.tgt
            if y not in N.dims:
                continue
            dmx, dny = M.dims[x], N.dims[y]
            eq = F.zeros(dmx * dny, n)
            touched = False
            if y in M.dims and g.gid in M.blocks:
                t = _kron(F, M.blocks[g.gid], F.eye(dny))
                eq[:, off[y]:off[y] + t.shape[1]] = t
                touched = True
            if x in N.dims and g.gid in N.blocks:
                t = _kron(F, F.eye(dmx), N.blocks[g.gid].T.copy())
                sl = slice(off[x], off[x] + t.shape[1])
                eq[:, sl] = F.sub(eq[:, sl], t)
                touched = True
            if touched:
                rows.append(eq)
    sol = F.right_nullspace(np.concatenate(rows, axis=0)) if rows else F.eye(n)
    out = []
    for v in sol:
        mats = {x: v[off[x]:off[x] + M.dims[x] * N.dims[x]].reshape(M.dims[x], N.dims[x]) for x in verts}
        out.append(ModuleMap(M, N, mats))
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_basis(M, N))


def _combine(F, basis, coeffs, M, N):
    mats = {}
    for f, c in zip(basis, coeffs):
        if c == 0:
            continue
        for x, m in f.mats.items():
            acc = mats.get(x)
            mats[x] = F.scale(c, m) if acc is None else F.add(acc, F.scale(c, m))
    return ModuleMap(M, N, mats)


def find_isomorphism(M: Module, N: Module, trials: int = 24, seed: int | None = None):
    """An isomorphism ``M -> N`` or None (randomised over ``Hom``; seeded)."""
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return ModuleMap(M, N, {})
    basis = hom_basis(M, N)
    if not basis:
        return None
    F = M.field
    for f in basis:
        if f.is_iso():
            return f
    rng = np.random.default_rng(_seed if seed is None else seed)
    for _ in range(trials):
        f = _combine(F, basis, F.random_vector(rng, len(basis)), M, N)
        if f.is_iso():
            return f
    return None


def is_isomorphic(M: Module, N: Module, **kw) -> bool:
    return find_isomorphism(M, N, **kw) is not None


def _nilpotent_or_invertible(f: ModuleMap):
    F = f.field
    n = f.src.dim
    g = f
    for _ in range(max(1, n.bit_length())):
        g = g.compose(g)
    r = g.rank()
    return r == 0 or r == n, r


def is_indecomposable(M: Module, trials: int = 16, seed: int | None = None) -> bool:
    """Fitting test on endomorphisms: a decomposable module has a non-trivial idempotent power."""
    if M.dim == 0:
        return False
    basis = hom_basis(M, M)
    F = M.field
    rng = np.random.default_rng(_seed if seed is None else seed)
    cands = list(basis) + [_combine(F, basis, F.random_vector(rng, len(basis)), M, M) for _ in range(trials)]
    for f in cands:
        ok, _ = _nilpotent_or_invertible(f)
        if not ok:
            return False
    return True


# --- projective cover, syzygy, cosyzygy -----------------------------------------

def map_from_projective(P: Module, M: Module, m) -> ModuleMap:
    """The map ``e_zΛ -> M`` sending ``e_z`` to the vector ``m`` in ``M_z``."""
    F = M.field
    z = P.vertex
    mats = {}
    row = np.asarray(m).reshape(1, -1)
    for x, words in P.words.items():
        if x not in M.dims:
            continue
        out = F.zeros(len(words), M.dims[x])
        for j, w in enumerate(words):
            out[j] = M.act(z, row, w)[0] if w else row[0]
        mats[x] = out
    return ModuleMap(P, M, mats)


def projective_cover(M: Module) -> tuple[Module, ModuleMap]:
    F = M.field
    rad = radical_spaces(M)
    pieces = []
    for x in sorted(M.dims):
        sub = rad.get(x, F.zeros(0, M.dims[x]))
        for v in F.complement_basis(sub, M.dims[x]):
            pieces.append((x, v))
    if not pieces:
        return zero_module(M.ring), ModuleMap(zero_module(M.ring), M, {})
    projs = [projective(M.ring, x) for x, _ in pieces]
    P, inj, prj = direct_sum(projs)
    mats = {}
    for (x, v), Pz, p in zip(pieces, projs, prj):
        phi = map_from_projective(Pz, M, v)
        part = p.compose(phi)
        for y, m in part.mats.items():
            mats[y] = m if y not in mats else F.add(mats[y], m)
    P.name = "P(" + M.name + ")"
    return P, ModuleMap(P, M, mats)


def syzygy(M: Module) -> Module:
    P, pi = projective_cover(M)
    K, _ = kernel(pi, f"Ω({M.name})")
    return K


def injective_hull(M: Module) -> tuple[Module, ModuleMap]:
    """Embedding into projective-injectives ``e_xΛ`` matched to the socle of ``M``."""
    F = M.field
    soc = socle_spaces(M)
    projs = []
    maps = []
    for x in sorted(soc):
        S = soc[x]
        P = projective(M.ring, x)
        top_idx = _socle_coord(P, x)
        basis = hom_basis(M, P)
        # functional on soc_x(M): value of f(s) at the socle coordinate of e_xΛ
        vals = np.stack([F.matmul(S, f.mat(x))[:, top_idx] for f in basis], axis=0) if basis else F.zeros(0, S.shape[0])
        chosen = []
        acc = F.zeros(0, S.shape[0])
        for f, v in zip(basis, vals):
            cand = F.concat_rows(acc, v[None, :])
            if F.rank(cand) > acc.shape[0]:
                acc = cand
                chosen.append(f)
            if len(chosen) == S.shape[0]:
                break
        if len(chosen) < S.shape[0]:
            raise RuntimeError(f"could not embed the socle at {x}; ring not self-injective here")
        for f in chosen:
            projs.append(P)
            maps.append(f)
    if not projs:
        return zero_module(M.ring), ModuleMap(M, zero_module(M.ring), {})
    I, inj, _ = direct_sum(projs)
    mats = {}
    for f, i in zip(maps, inj):
        part = f.compose(i)
        for y, m in part.mats.items():
            mats[y] = m if y not in mats else F.add(mats[y], m)
    return I, ModuleMap(M, I, mats)


def _socle_coord(P: Module, x) -> int:
    soc = socle_spaces(P)
    if list(soc) != [x] or soc[x].shape[0] != 1:
        raise RuntimeError(f"projective at {x} does not have simple socle S_x")
    return int(np.nonzero(soc[x][0])[0][0])


def cosyzygy(M: Module) -> Module:
    I, iota = injective_hull(M)
    C, _ = cokernel(iota, f"Ω⁻¹({M.name})")
    return C


def has_projective_summand(M: Module) -> bool:
    """True if some ``e_xΛ`` splits off (tested through maps into the projective)."""
    F = M.field
    for x, d in top_dims(M).items():
        P = projective(M.ring, x)
        if M.dim < P.dim:
            continue
        for f in hom_basis(M, P):
            if f.is_surjective():
                return True
    return False


def stable_hom_dim(M: Module, N: Module) -> int:
    """``dim Hom(M, N)`` minus the maps factoring through the projective cover of ``N``."""
    F = M.field
    basis = hom_basis(M, N)
    if not basis:
        return 0
    P, pi = projective_cover(N)
    through = [f.compose(pi) for f in hom_basis(M, P)] if P.dim else []
    if not through:
        return len(basis)
    verts = sorted(x for x in M.dims if x in N.dims)

    def vec(f):
        return np.concatenate([f.mat(x).reshape(-1) for x in verts])

    return len(basis) - F.rank(np.stack([vec(f) for f in through]))


def hom_to_simple_dim(M: Module, x) -> int:
    return top_dims(M).get(x, 0)


# --- hearts and summands --------------------------------------------------------

@dataclass
class HeartReport:
    vertex: tuple
    dim: int
    simple_summand: bool
    idempotent_rank: int | None

    def to_dict(self):
        return {"vertex": list(self.vertex), "dim": self.dim,
                "simple_summand": self.simple_summand, "idempotent_rank": self.idempotent_rank}


def heart(ring: TruncatedAlgebra, x) -> tuple[Module, HeartReport]:
    """``rad P_x / soc P_x`` and whether ``S_x`` splits off it.

    ``S_x`` is a summand exactly when some socle vector at ``x`` lies outside
    the radical; the projection onto it along a complement containing the
    radical is then an idempotent endomorphism of rank one.
    """
    F = ring.field
    P = projective(ring, x)
    R, incl = radical(P)
    soc_in_R = {y: F.solve_rows(incl.mat(y), rows) for y, rows in socle_spaces(P).items()}
    H, _ = quotient(R, soc_in_R)
    H.name = f"H{x}"
    soc = socle_spaces(H).get(x)
    rad = radical_spaces(H).get(x, F.zeros(0, H.dims.get(x, 0)))
    if soc is None:
        return H, HeartReport(x, H.dim, False, None)
    for s in soc:
        if not F.in_span(rad, s[None, :]):
            e = _split_idempotent(H, x, s, rad)
            ok = e.is_homomorphism() and F.is_zero(F.sub(e.compose(e).mat(x), e.mat(x)))
            return H, HeartReport(x, H.dim, bool(ok), e.rank())
    return H, HeartReport(x, H.dim, False, None)


def _split_idempotent(H: Module, x, s, rad) -> ModuleMap:
    F = H.field
    d = H.dims[x]
    c = F.complement_basis(F.concat_rows(rad, s[None, :]), d)
    basis = F.concat_rows(F.concat_rows(s[None, :], rad), c)
    # projection onto span(s) along span(rad, complement)
    coords = F.solve_rows(basis, F.eye(d))
    e = F.zeros(d, d)
    e[:, :] = F.matmul(coords[:, :1], s[None, :])
    return ModuleMap(H, H, {x: e})


# --- paths and left multiplication -------------------------------------------------

def left_multiplication(ring: TruncatedAlgebra, word, x=None) -> ModuleMap:
    """``v -> p v`` from ``e_xΛ`` to ``e_sΛ`` for a path ``p: s -> ... -> x``."""
    alg = ring.alg
    x = word[-1][1] if word else x
    s = word[0][0] if word else x
    Px, Ps = projective(ring, x), projective(ring, s)
    full = alg.left_matrix(word, x) if word else alg.field.eye(alg.projective(x).dim)
    prx, prs = alg.projective(x), alg.projective(s)
    mats = {}
    for y in Px.dims:
        if y not in Ps.dims:
            continue
        mats[y] = full[np.ix_(prx.by_target[y], prs.by_target[y])]
    return ModuleMap(Px, Ps, mats)


@dataclass
class SumAmbient:
    """A direct sum of projectives with its structure maps."""

    module: Module
    inj: list
    proj: list

    def element(self, parts: dict, x):
        """Row vector at ``x`` from summand index -> coordinates in that summand."""
        F = self.module.field
        out = F.zeros(1, self.module.dims[x])
        for k, v in parts.items():
            out = F.add(out, F.matmul(np.asarray(v).reshape(1, -1), self.inj[k].mat(x)))
        return out


def tuple_map(ring: TruncatedAlgebra, words, x) -> tuple[SumAmbient, ModuleMap]:
    """``v -> (p_1 v, ..., p_r v)`` from ``e_xΛ`` into a sum of projectives."""
    maps = [left_multiplication(ring, w, x) for w in words]
    S, inj, proj = direct_sum([m.dst for m in maps])
    F = ring.field
    mats = {}
    for m, i in zip(maps, inj):
        part = m.compose(i)
        for y, a in part.mats.items():
            mats[y] = a if y not in mats else F.add(mats[y], a)
    return SumAmbient(S, inj, proj), ModuleMap(maps[0].src, S, mats)


def path_vector(ring: TruncatedAlgebra, word):
    """Coordinates of a path in ``e_sΛ`` at its end vertex."""
    s, y = word[0][0], word[-1][1]
    _, vec = ring.alg.path_element(word)
    return vec[ring.alg.projective(s).by_target[y]]


def path_module(ring: TruncatedAlgebra, *words, name=""):
    """``p_1Λ + ... + p_rΛ`` inside ``e_sΛ`` (all paths start at ``s``)."""
    s = words[0][0][0]
    P = projective(ring, s)
    gens = {}
    for w in words:
        y = w[-1][1]
        v = path_vector(ring, w)[None, :]
        gens[y] = v if y not in gens else ring.field.concat_rows(gens[y], v)
    return submodule(P, gens, name or "+".join(_wname(w) for w in words))


def tuple_module(ring: TruncatedAlgebra, words, name=""):
    """``(p_1, ..., p_r)Λ`` inside ``⊕ e_{s_j}Λ`` (all paths end at the same vertex).

    Returns ``(M, inclusion, ambient, phi)`` where ``phi: e_xΛ -> ambient`` has image ``M``.
    """
    x = words[0][-1][1]
    amb, phi = tuple_map(ring, words, x)
    M, incl = image(phi, name or "(" + ",".join(_wname(w) for w in words) + ")")
    return M, incl, amb, phi


def sum_submodule(amb: SumAmbient, gens: list, name=""):
    """Submodule of a sum ambient generated by ``(summand, path)`` pairs."""
    F = amb.module.field
    spaces = {}
    for k, w in gens:
        ring = amb.module.ring
        y = w[-1][1]
        v = amb.element({k: path_vector(ring, w)}, y)
        spaces[y] = v if y not in spaces else F.concat_rows(spaces[y], v)
    return submodule(amb.module, spaces, name)


def _unit(F, n, i):
    v = F.zeros(1, n)
    v[0, i] = 1
    return v


def _wname(w):
    return "".join(f"[{a[0]}>{a[1]}]" for a in w)


def same_subspaces(a: dict, b: dict, F) -> bool:
    keys = {x for x, r in a.items() if r.shape[0]} | {x for x, r in b.items() if r.shape[0]}
    for x in keys:
        ra, rb = a.get(x), b.get(x)
        if ra is None or rb is None or ra.shape[0] == 0 or rb.shape[0] == 0:
            return False
        if F.rank(ra) != F.rank(rb) or not F.in_span(ra, rb):
            return False
    return True


def subspaces_of(incl: ModuleMap) -> dict:
    return {x: m for x, m in incl.mats.items() if m.shape[0]}


def contained(a: dict, b: dict, F) -> bool:
    for x, r in a.items():
        if r.shape[0] == 0:
            continue
        if x not in b or not F.in_span(b[x], r):
            return False
    return True


# --- restriction to a smaller vertex set --------------------------------------------

def restrict(M: Module, ring: TruncatedAlgebra) -> Module:
    """Apply the idempotent functor ``(-)e`` to a module over a larger view."""
    F = M.field
    dims = {x: d for x, d in M.dims.items() if x in ring.V}
    blocks = {}
    for x in dims:
        for g in ring.generators_from(x):
            if g.tgt not in dims:
                continue
            rows = F.eye(dims[x])
            cur = x
            for a in g.word:
                gid = M.ring.arrow_gid(a)
                b = M.blocks.get(gid) if gid is not None else None
                if b is None:
                    rows = None
                    break
                rows = F.matmul(rows, b)
                cur = a[1]
            if rows is not None and not F.is_zero(rows):
                blocks[g.gid] = rows
    R = Module(ring, dims, blocks, f"{M.name}e")
    return R


def restrict_hom(f: ModuleMap, src: Module, dst: Module) -> ModuleMap:
    return ModuleMap(src, dst, {x: m for x, m in f.mats.items() if x in src.dims and x in dst.dims})


# --- exact sequences -------------------------------------------------------------

@dataclass
class ExactnessReport:
    exact: bool
    nodes: list  # per node: (dim ker, dim im)
    failure: str = ""

    def __bool__(self):
        return self.exact

    def to_dict(self):
        return {"exact": self.exact, "nodes": self.nodes, "failure": self.failure}


def verify_exact_sequence(maps: list[ModuleMap]) -> ExactnessReport:
    """Check ``0 -> M_0 -> M_1 -> ... -> M_r -> 0`` given the ``r`` maps."""
    nodes = []
    if not maps:
        return ExactnessReport(True, [])
    for f in maps:
        if not f.is_homomorphism():
            return ExactnessReport(False, nodes, f"{f.src.name} -> {f.dst.name} is not a homomorphism")
    if not maps[0].is_injective():
        return ExactnessReport(False, nodes, f"first map not injective (rank {maps[0].rank()} < {maps[0].src.dim})")
    for f, g in zip(maps, maps[1:]):
        fg = f.compose(g)
        ker = f.dst.dim - g.rank()
        im = f.rank()
        nodes.append((ker, im))
        if not fg.is_zero() or ker != im:
            return ExactnessReport(False, nodes, f"at {f.dst.name}: dim ker {ker} vs dim im {im}")
    if not maps[-1].is_surjective():
        return ExactnessReport(False, nodes, f"last map not surjective (rank {maps[-1].rank()} < {maps[-1].dst.dim})")
    return ExactnessReport(True, nodes)


def short_exact_from_ambient(K_incl: ModuleMap, M_incl: ModuleMap, phi: ModuleMap, Q_incl: ModuleMap) -> ExactnessReport:
    """``0 -> K -> M -> Q -> 0`` where ``K, M`` sit in the source of ``phi`` and ``Q`` in its target."""
    F = phi.field
    K, M, Q = K_incl.src, M_incl.src, Q_incl.src
    if not contained(subspaces_of(K_incl), subspaces_of(M_incl), F):
        return ExactnessReport(False, [], f"{K.name} is not contained in {M.name}")
    inc = restrict_map(identity(M_incl.dst), K_incl, M_incl)
    try:
        f = restrict_map(phi, M_incl, Q_incl)
    except ValueError:
        return ExactnessReport(False, [], f"image of {M.name} not inside {Q.name}")
    return verify_exact_sequence([inc, f])


# --- rhombus filtrations ------------------------------------------------------------

def rhombus_shape(M: Module):
    """``(top, socle, middle)`` if ``M`` is a rhombus module of the ring's geometry, else None."""
    if M.dim != 4 or any(d != 1 for d in M.dims.values()):
        return None
    t, s = top_dims(M), socle_dims(M)
    if len(t) != 1 or len(s) != 1:
        return None
    y, z = next(iter(t)), next(iter(s))
    mid = sorted(set(M.dims) - {y, z})
    if len(mid) != 2:
        return None
    geom = M.ring.alg.geom
    x1, x2 = mid
    if geom.common_rhombus(z, x1, x2) != y:
        return None
    if radical_series(M) != [{y: 1}, {x1: 1, x2: 1}, {z: 1}]:
        return None
    return y, z, (x1, x2)


def _rhombus_candidates(Q: Module, rng, extra: int = 4):
    F = Q.field
    ss = socle_series(Q)
    s2 = ss[1] if len(ss) > 1 else ss[0]
    s3 = ss[2] if len(ss) > 2 else ss[-1]
    for y in sorted(Q.dims):
        if y not in s3:
            continue
        lower = s2.get(y, F.zeros(0, Q.dims[y]))
        cand = s3[y]
        comp = [v for v in cand if not F.in_span(lower, v[None, :])] if lower.shape[0] else list(cand)
        for v in comp:
            yield y, v
        for _ in range(extra if len(cand) > 1 else 0):
            v = F.matmul(F.random_vector(rng, cand.shape[0])[None, :], cand)[0]
            if not F.in_span(lower, v[None, :]):
                yield y, v


def rhombus_filtrations(M: Module, limit: int = 2, seed: int | None = None, budget: int = 400):
    """Search for chains ``0 = M_0 ⊂ ... ⊂ M_k = M`` with rhombus quotients.

    Returns up to ``limit`` witness chains, each a list of ``(top, socle)``
    pairs for the successive quotients, with distinct first steps.  An empty
    result means the greedy search failed, not that no filtration exists.
    """
    F = M.field
    rng = np.random.default_rng(_seed if seed is None else seed)
    found = []
    firsts = []
    state = {"budget": budget}

    def rec(cur: dict, chain):
        if len(found) >= limit or state["budget"] <= 0:
            return
        state["budget"] -= 1
        if sum(r.shape[0] for r in cur.values()) == M.dim:
            found.append(list(chain))
            return
        Q, pi = quotient(M, cur)
        seen = []
        for y, v in _rhombus_candidates(Q, rng):
            sub = _closure(Q, {y: v[None, :]})
            R, _ = sub_from_spaces(Q, sub)
            shape = rhombus_shape(R)
            if shape is None:
                continue
            lifted = {}
            for x, d in M.dims.items():
                parts = [cur[x]] if x in cur else []
                if x in sub:
                    parts.append(_lift(F, pi.mat(x), sub[x]))
                if parts:
                    lifted[x] = F.rowspace(np.concatenate(parts, axis=0))
            if any(same_subspaces(lifted, s, F) for s in seen):
                continue
            seen.append(lifted)
            if not chain and any(same_subspaces(lifted, s, F) for s in firsts):
                continue
            if not chain:
                firsts.append(lifted)
            before = len(found)
            rec(lifted, chain + [(shape[0], shape[1])])
            if len(found) >= limit:
                return
            if chain and len(found) > before:
                return

    rec({}, [])
    return found


def rhombus_filtration(M: Module, seed: int | None = None):
    out = rhombus_filtrations(M, limit=1, seed=seed)
    return out[0] if out else None


# --- omega orbits -------------------------------------------------------------------

@dataclass
class OmegaOrbit:
    start: Module = field(repr=False)
    terms: list = field(repr=False)
    period: int | None
    stopped: str = ""

    def dim_sequence(self):
        return [M.dim for M in self.terms]

    def to_dict(self):
        return {"period": self.period, "dims": self.dim_sequence(), "stopped": self.stopped,
                "tops": [[[list(x), d] for x, d in sorted(top_dims(M).items())] for M in self.terms]}


def omega_orbit(M: Module, max_steps: int = 40, max_dim: int | None = None) -> OmegaOrbit:
    """Iterate Ω until a term is isomorphic to ``M`` (period) or a bound is hit.

    ``terms`` holds ``M, Ω(M), ...`` up to the last term before the repeat.
    With ``max_dim`` the iteration also stops once a term grows beyond it.
    """
    terms = [M]
    cur = M
    for step in range(1, max_steps + 1):
        cur = syzygy(cur)
        if cur.dim == 0:
            terms.append(cur)
            return OmegaOrbit(M, terms, None, "projective")
        if cur.dims == M.dims and is_isomorphic(cur, M):
            return OmegaOrbit(M, terms, step)
        terms.append(cur)
        if max_dim is not None and cur.dim > max_dim:
            return OmegaOrbit(M, terms, None, f"dimension {cur.dim} exceeds {max_dim}")
    return OmegaOrbit(M, terms, None, f"no repeat within {max_steps} steps")
