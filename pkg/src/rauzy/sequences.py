"""Star labelling around a vertex and the catalogue of short exact sequences.

Around a vertex ``z`` with neighbours ``x_1, ..., x_n`` (counter-clockwise,
starting from a chosen rotation) we write

    b_i : z -> x_i,        d_i : x_i -> y_i,        c_i : x_{i+1} -> y_i

where ``y_i`` is the far corner of the rhombus spanned by ``x_i, z, x_{i+1}``;
a trailing ``_`` marks the reversed arrow (``b_1_`` is b-bar).  Every
sequence is returned as a :class:`SequenceInstance` holding the kernel, the
middle term (both inside one ambient), the map and the cokernel.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import modcalc as mc
from .quiver import Geometry


@dataclass
class StarFrame:
    z: tuple
    xs: list
    ys: list

    @property
    def n(self):
        return len(self.xs)

    def x(self, i):
        return self.xs[(i - 1) % self.n]

    def y(self, i):
        return self.ys[(i - 1) % self.n]

    def b(self, i):
        return ((self.z, self.x(i)),)

    def b_(self, i):
        return ((self.x(i), self.z),)

    def d(self, i):
        return ((self.x(i), self.y(i)),)

    def d_(self, i):
        return ((self.y(i), self.x(i)),)

    def c(self, i):
        return ((self.x(i + 1), self.y(i)),)

    def c_(self, i):
        return ((self.y(i), self.x(i + 1)),)

    def angle(self, i):
        """Angle at ``z`` of the rhombus between ``x_i`` and ``x_{i+1}``."""
        return self._angles[(i - 1) % self.n]


def star_frame(geom: Geometry, z, rotation: int = 0) -> StarFrame | None:
    """Labelled star at ``z``; None unless ``z`` has a complete star."""
    if not geom.full(z):
        return None
    dirs = sorted(geom.nbr[z])
    n = len(dirs)
    dirs = dirs[rotation % n:] + dirs[: rotation % n]
    xs = [geom.nbr[z][d] for d in dirs]
    ys, angles = [], []
    for i in range(n):
        u, w = xs[i], xs[(i + 1) % n]
        y = geom.common_rhombus(z, u, w)
        if y is None:
            return None
        ys.append(y)
        t = geom.rhombus_with_corners(z, y)[0]
        angles.append(t.angle_at(z))
    fr = StarFrame(z, xs, ys)
    fr._angles = angles
    return fr


def cat(*words):
    out = ()
    for w in words:
        out = out + tuple(w)
    return out


@dataclass
class SequenceInstance:
    name: str
    z: tuple
    rotation: int
    K: mc.Module = field(repr=False)
    M: mc.Module = field(repr=False)
    Q: mc.Module = field(repr=False)
    inc: mc.ModuleMap = field(repr=False, default=None)
    proj: mc.ModuleMap = field(repr=False, default=None)
    report: mc.ExactnessReport = None
    expected_quotients: int | None = None

    @property
    def exact(self):
        return bool(self.report)

    def dims(self):
        return (self.K.dim, self.M.dim, self.Q.dim)

    def to_dict(self):
        return {"name": self.name, "vertex": list(self.z), "rotation": self.rotation,
                "dims": list(self.dims()), "exact": self.exact,
                "failure": self.report.failure if self.report else ""}


def _instance(name, fr, rot, K_incl, M_incl, phi, Q_incl, quotients=None):
    F = phi.field
    K, M, Q = K_incl.src, M_incl.src, Q_incl.src
    inc = f = None
    if not mc.contained(mc.subspaces_of(K_incl), mc.subspaces_of(M_incl), F):
        rep = mc.ExactnessReport(False, [], "kernel candidate not contained in the middle term")
    else:
        inc = mc.restrict_map(mc.identity(M_incl.dst), K_incl, M_incl)
        try:
            f = mc.restrict_map(phi, M_incl, Q_incl)
            rep = mc.verify_exact_sequence([inc, f])
        except ValueError:
            rep = mc.ExactnessReport(False, [], "image leaves the cokernel candidate")
    return SequenceInstance(name, fr.z, rot, K, M, Q, inc, f, rep, quotients)


def _whole(ring, z):
    P = mc.projective(ring, z)
    return mc.identity(P)


# --- individual sequences ---------------------------------------------------------

def arrow_sequences(ring, fr, rot):
    n = fr.n
    out = []
    _, M = mc.path_module(ring, fr.b(1))
    _, K = mc.path_module(ring, cat(fr.b(1), fr.c(n)))
    _, Q = mc.path_module(ring, cat(fr.b_(2), fr.b(1)))
    phi = mc.left_multiplication(ring, fr.b_(2))
    out.append(_instance("arrow (b c_n)", fr, rot, K, M, phi, Q, 2))
    _, K = mc.path_module(ring, cat(fr.b(1), fr.d(1)))
    _, Q = mc.path_module(ring, cat(fr.b_(n), fr.b(1)))
    phi = mc.left_multiplication(ring, fr.b_(n))
    out.append(_instance("arrow (b d_1)", fr, rot, K, M, phi, Q, 2))
    return out


def two_arrow_sequence(ring, fr, rot):
    n = fr.n
    _, M = mc.path_module(ring, fr.b(1), fr.b(2))
    _, K = mc.path_module(ring, cat(fr.b(1), fr.d(1)))
    amb, phi = mc.tuple_map(ring, [fr.b_(n), fr.b_(3)], fr.z)
    _, Q = mc.sum_submodule(amb, [(0, cat(fr.b_(n), fr.b(1))), (1, cat(fr.b_(3), fr.b(2)))])
    return _instance("two-arrow", fr, rot, K, M, phi, Q, 3)


def two_arrow_defect(ring, fr) -> int:
    """``dim(b_1A ∩ b_2A) - dim b_1d_1A``: the kernel of the induced map on the quotient."""
    F = ring.field
    _, i1 = mc.path_module(ring, fr.b(1))
    _, i2 = mc.path_module(ring, fr.b(2))
    K, _ = mc.path_module(ring, cat(fr.b(1), fr.d(1)))
    a, b = mc.subspaces_of(i1), mc.subspaces_of(i2)
    inter = sum(F.intersect(a[x], b[x]).shape[0] for x in a if x in b)
    return inter - K.dim


def dual_two_arrow_sequence(ring, fr, rot):
    n = fr.n
    M, M_incl, amb, _ = mc.tuple_module(ring, [fr.b_(1), fr.b_(2)])
    _, K = mc.sum_submodule(amb, [(0, cat(fr.b_(1), fr.b(n))), (1, cat(fr.b_(2), fr.b(3)))])
    L = mc.left_multiplication(ring, fr.d_(1))
    phi = amb.proj[0].compose(L)
    _, Q = mc.path_module(ring, cat(fr.d_(1), fr.b_(1)))
    return _instance("dual two-arrow", fr, rot, K, M_incl, phi, Q, 3)


def three_arrow_sequence(ring, fr, rot):
    _, M = mc.path_module(ring, fr.b(1), fr.b(2), fr.b(3))
    _, K = mc.path_module(ring, fr.b(1), fr.b(2))
    phi = mc.left_multiplication(ring, fr.b_(4))
    _, Q = mc.path_module(ring, cat(fr.b_(4), fr.b(3)))
    return _instance("three-arrow", fr, rot, K, M, phi, Q, 4)


def dual_three_arrow_sequence(ring, fr, rot):
    F = ring.field
    _, M_incl, amb3, _ = mc.tuple_module(ring, [fr.b_(1), fr.b_(2), fr.b_(3)])
    _, Q_incl, amb2, _ = mc.tuple_module(ring, [fr.b_(1), fr.b_(2)])
    mats = {}
    for k in range(2):
        part = amb3.proj[k].compose(amb2.inj[k])
        for y, a in part.mats.items():
            mats[y] = a if y not in mats else F.add(mats[y], a)
    phi = mc.ModuleMap(amb3.module, amb2.module, mats)
    _, K = mc.sum_submodule(amb3, [(2, cat(fr.b_(3), fr.b(4)))])
    return _instance("dual three-arrow", fr, rot, K, M_incl, phi, Q_incl, 4)


def projective_sequences(ring, fr, rot):
    """Sequences with middle term ``e_zA`` for 3-, 4-, 5- and 6-vertices."""
    n = fr.n
    E = _whole(ring, fr.z)
    out = []
    if n == 3:
        _, K = mc.path_module(ring, fr.b(1))
        w = cat(fr.c_(2), fr.b_(3))
        _, Q = mc.path_module(ring, w)
        out.append(_instance("3-vertex (c_2 b_3 bar)", fr, rot, K, E, mc.left_multiplication(ring, w), Q))
        _, K = mc.path_module(ring, fr.b(3))
        w = cat(fr.d_(1), fr.b_(1))
        _, Q = mc.path_module(ring, w)
        out.append(_instance("3-vertex (d_1 b_1 bar)", fr, rot, K, E, mc.left_multiplication(ring, w), Q))
    elif n == 4:
        _, K = mc.path_module(ring, fr.b(1))
        _, Q = mc.path_module(ring, fr.b_(3))
        out.append(_instance("4-vertex", fr, rot, K, E, mc.left_multiplication(ring, fr.b_(3)), Q, 4))
    elif n == 5:
        _, K = mc.path_module(ring, fr.b(1), fr.b(2))
        _, Q = mc.path_module(ring, fr.b_(4))
        out.append(_instance("5-vertex", fr, rot, K, E, mc.left_multiplication(ring, fr.b_(4)), Q, 5))
    elif n == 6:
        _, K = mc.path_module(ring, fr.b(1), fr.b(2))
        _, Q, amb, phi = mc.tuple_module(ring, [fr.b_(4), fr.b_(5)])
        out.append(_instance("6-vertex", fr, rot, K, E, phi, Q, 6))
        _, K = mc.path_module(ring, fr.b(1), fr.b(2), fr.b(3))
        _, Q = mc.path_module(ring, fr.b_(5))
        out.append(_instance("6-vertex (b_5 bar)", fr, rot, K, E, mc.left_multiplication(ring, fr.b_(5)), Q, 6))
    return out


def omega_claims(ring, fr) -> dict:
    """Syzygy identifications attached to the projective sequences, checked both ways."""
    n = fr.n
    out = {}

    def mod(*w):
        return mc.path_module(ring, *w)[0]

    if n == 3:
        out["Ω(c̄2b̄3A) ≅ b1A"] = mc.is_isomorphic(mc.syzygy(mod(cat(fr.c_(2), fr.b_(3))), ), mod(fr.b(1)))
        out["Ω(d̄1b̄1A) ≅ b3A"] = mc.is_isomorphic(mc.syzygy(mod(cat(fr.d_(1), fr.b_(1)))), mod(fr.b(3)))
        out["Ω(b3A) ≅ d̄1b̄1A"] = mc.is_isomorphic(mc.syzygy(mod(fr.b(3))), mod(cat(fr.d_(1), fr.b_(1))))
    elif n == 4:
        b1, b3_ = mod(fr.b(1)), mod(fr.b_(3))
        out["Ω(b̄3A) ≅ b1A"] = mc.is_isomorphic(mc.syzygy(b3_), b1)
        out["Ω⁻¹(b1A) ≅ b̄3A"] = mc.is_isomorphic(mc.cosyzygy(b1), b3_)
        out["Ω(b1A) ≅ b̄3A"] = mc.is_isomorphic(mc.syzygy(b1), b3_)
    elif n == 5:
        out["Ω(b̄4A) ≅ b1A+b2A"] = mc.is_isomorphic(mc.syzygy(mod(fr.b_(4))), mod(fr.b(1), fr.b(2)))
        out["Ω(b̄1A) = b3A+b4A"] = mc.is_isomorphic(mc.syzygy(mod(fr.b_(1))), mod(fr.b(3), fr.b(4)))
    elif n == 6:
        out["Ω(b̄5A) ≅ b1A+b2A+b3A"] = mc.is_isomorphic(mc.syzygy(mod(fr.b_(5))),
                                                        mod(fr.b(1), fr.b(2), fr.b(3)))
    return out


def star_sequences(ring, fr, rot) -> list[SequenceInstance]:
    """Every catalogued sequence applicable at this star (the arrow sequences for every ``n``)."""
    n = fr.n
    out = arrow_sequences(ring, fr, rot)
    if n >= 4:
        out.append(two_arrow_sequence(ring, fr, rot))
        out.append(dual_two_arrow_sequence(ring, fr, rot))
    if n >= 5:
        out.append(three_arrow_sequence(ring, fr, rot))
        out.append(dual_three_arrow_sequence(ring, fr, rot))
    out.extend(projective_sequences(ring, fr, rot))
    return out


# --- sequences attached to one arrow (arrow truncation) -----------------------------

def arrow_case(fr) -> str:
    """``"i"`` when the two rhombi along ``b_1`` have equal angles at ``z``, else ``"ii"``."""
    return "i" if fr.angle(fr.n) == fr.angle(1) else "ii"


def arrow_pair_sequences(ring, fr, rot) -> list[SequenceInstance]:
    """Sequences relating ``bA`` and ``b̄A`` for ``b = b_1``."""
    n = fr.n
    b, b_ = fr.b(1), fr.b_(1)
    out = []
    _, bA = mc.path_module(ring, b)
    _, b_A = mc.path_module(ring, b_)
    if arrow_case(fr) == "i":
        _, K = mc.path_module(ring, cat(b_, b, fr.d(1)), cat(b_, b, fr.c(n)))
        _, Q = mc.path_module(ring, cat(b, b_))
        out.append(_instance("(1i)", fr, rot, K, b_A, mc.left_multiplication(ring, b), Q))
        _, K = mc.path_module(ring, cat(b_, b))
        _, Q, amb, _ = mc.tuple_module(ring, [cat(fr.b_(2), b, b_), cat(fr.b_(n), b, b_)])
        amb2, phi = mc.tuple_map(ring, [cat(fr.b_(2), b), cat(fr.b_(n), b)], fr.x(1))
        phi = mc.ModuleMap(phi.src, amb.module, phi.mats)
        out.append(_instance("(2i)", fr, rot, K, b_A, phi, Q))
        _, K = mc.path_module(ring, cat(b, b_, fr.b(n)), cat(b, b_, fr.b(2)))
        _, Q = mc.path_module(ring, cat(b_, b))
        out.append(_instance("(3i)", fr, rot, K, bA, mc.left_multiplication(ring, b_), Q))
        _, K = mc.path_module(ring, cat(b, b_))
        _, Q, amb, _ = mc.tuple_module(ring, [cat(fr.d_(1), b_, b), cat(fr.c_(n), b_, b)])
        amb2, phi = mc.tuple_map(ring, [cat(fr.d_(1), b_), cat(fr.c_(n), b_)], fr.z)
        phi = mc.ModuleMap(phi.src, amb.module, phi.mats)
        out.append(_instance("(4i)", fr, rot, K, bA, phi, Q))
    else:
        _, K = mc.path_module(ring, cat(b_, b))
        _, Q = mc.path_module(ring, cat(b, b_))
        out.append(_instance("(1ii)", fr, rot, K, b_A, mc.left_multiplication(ring, b), Q))
        _, K = mc.path_module(ring, cat(b, b_))
        _, Q = mc.path_module(ring, cat(b_, b))
        out.append(_instance("(2ii)", fr, rot, K, bA, mc.left_multiplication(ring, b_), Q))
    return out


def restrict_instance(inst: SequenceInstance, ring) -> mc.ExactnessReport:
    """Apply ``(-)e`` for the vertex set of ``ring`` and re-check exactness."""
    if inst.inc is None or inst.proj is None:
        return mc.ExactnessReport(False, [], "sequence was not built")
    K = mc.restrict(inst.K, ring)
    M = mc.restrict(inst.M, ring)
    Q = mc.restrict(inst.Q, ring)
    if K.dim == 0 and M.dim == 0 and Q.dim == 0:
        return mc.ExactnessReport(True, [])
    inc = mc.restrict_hom(inst.inc, K, M)
    f = mc.restrict_hom(inst.proj, M, Q)
    return mc.verify_exact_sequence([inc, f])
