"""The twelve acceptance checks, shared by the test suite and ``rauzy verify-all``.

Each check returns a :class:`CheckResult` with a JSON-ready ``detail`` dict.
A ``level`` argument, where meaningful, replaces the default level(s).
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

from . import modcalc as mc
from .algebra import build_B, check_B1_not_symmetric, find_loops, validate_algebra
from .census import KNOWN_CONFIGURATIONS, certify_line_endpoints, determine_base_convention, enumerate_configurations
from .periodic import (arrow_truncation_check, boundary_arrows, certify_periodic_line, line_orbit,
                       near_boundary, restricted_sequence_report, simple_detection)
from .quiver import build_quiver, classify_vertices, find_periodic_line_candidates
from .sequences import star_sequences, star_frame, two_arrow_defect
from .tiling import generate_patch, padded_patch, sub_patch, validate_patch
from .workbench import LevelContext, RunConfig

TILE_TOTALS = (3, 5, 9, 17, 31, 57, 105, 193, 355, 653)
TIME_LIMITS = {"tiling": 10.0, "combinatorics": 30.0, "periodicity": 600.0}


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.1f}s)"

    def to_dict(self):
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


def tile_count_recurrence(levels: int) -> list[int]:
    """Tile totals from the substitution's letter counts (1 -> 312, 2 -> 1, 3 -> 2)."""
    n1, n2, n3 = 1, 1, 1
    out = []
    for _ in range(levels):
        out.append(n1 + n2 + n3)
        n1, n2, n3 = n1 + n2, n1 + n3, n1
    return out


class Workbenches:
    """Level contexts shared between checks of one run."""

    def __init__(self, cfg: RunConfig | None = None):
        self.cfg = cfg or RunConfig()
        self._ctx: dict = {}

    def __getitem__(self, level) -> LevelContext:
        if level not in self._ctx:
            self._ctx[level] = LevelContext.from_config(self.cfg, level)
        return self._ctx[level]


def _timed(number, name, fn, limit=None):
    t = time.perf_counter()
    passed, detail = fn()
    dt = time.perf_counter() - t
    if limit is not None:
        detail["time_limit_s"] = limit
        if dt >= limit:
            passed = False
            detail["timeout"] = True
    return CheckResult(number, name, bool(passed), detail, dt)


# --- 1-2: tiling and vertex classes ------------------------------------------------

def check_tiling(wb: Workbenches, level=None) -> CheckResult:
    top = 9 if level is None else level

    def run():
        oracle = tile_count_recurrence(top + 1)
        counts, valid = [], []
        for i in range(top + 1):
            p = generate_patch(i)
            counts.append(len(p))
            valid.append(bool(validate_patch(p)))
        expected = list(TILE_TOTALS[: top + 1]) if top <= 9 else oracle
        ok = all(valid) and counts == oracle == expected
        return ok, {"levels": top + 1, "counts": counts, "recurrence": oracle, "valid": valid}

    return _timed(1, "tiling validity and tile totals", run, TIME_LIMITS["tiling"])


def check_combinatorics(wb: Workbenches, level=None) -> CheckResult:
    top = 10 if level is None else level

    def run():
        per_level = {}
        ok = True
        for i in range(top + 1):
            p = generate_patch(i)
            big, _ = padded_patch(i, wb.cfg.padding)
            cl = classify_vertices(build_quiver(p), big)
            iso = [c for c in cl.values() if c.k == 2]
            bad = {
                "two_six": sum(1 for c in cl.values() if (c.k, c.n) == (2, 6)),
                "gap_over_3": sum(1 for c in cl.values() if c.n - c.k > 3),
                "acute_isolated": sum(1 for c in iso if c.acute),
            }
            ok &= not any(bad.values())
            per_level[i] = {"vertices": len(cl), "max_gap": max(c.n - c.k for c in cl.values()), **bad}
        return ok, {"levels": per_level}

    return _timed(2, "no (2,6)-vertex, n-k <= 3", run, TIME_LIMITS["combinatorics"])


# --- 3-5: algebra dimensions, multiplicities, rhombus modules -------------------------

def check_dims(wb: Workbenches, level=None) -> CheckResult:
    ctx = wb[6 if level is None else level]

    def run():
        inner = ctx.interior()
        rep = validate_algebra(ctx.algebra, inner)
        hist = Counter(ctx.geometry.degree(z) for z in inner)
        ok = rep.ok and rep.checked == len(inner) and rep.checked > 0
        return ok, {"level": ctx.level, "interior": len(inner), "checked": rep.checked,
                    "degrees": dict(sorted(hist.items())), "validation": rep.to_dict()}

    return _timed(3, "algebra dimensions at interior vertices", run)


def multiplicities_at(alg, z) -> dict:
    """Composition multiplicities of ``e_zA`` predicted by the star of ``z``."""
    g = alg.geom
    exp = Counter({z: g.degree(z)})
    for x in g.nbr[z].values():
        exp[x] += 2
    for _, _, opp, _ in g.rhombi_at[z]:
        exp[opp] += 1
    return dict(exp)


def check_multiplicity(wb: Workbenches, level=None) -> CheckResult:
    ctx = wb[6 if level is None else level]

    def run():
        alg = ctx.algebra
        fails = []
        for z in ctx.interior():
            pr = alg.projective(z)
            got = {y: d for y, d in pr.dim_vector().items() if d}
            if pr.dim != 4 * ctx.geometry.degree(z) or got != multiplicities_at(alg, z):
                fails.append([list(z), pr.dim])
        return not fails, {"level": ctx.level, "checked": len(ctx.interior()), "failures": fails}

    return _timed(4, "composition multiplicities of e_zA", run)


def rhombus_module(ring, tile, z):
    """``(b d)A`` for the corner ``z`` of ``tile``: the path to the opposite corner."""
    a, u, v, w = tile.corners()
    opp = {a: w, w: a, u: v, v: u}
    y = opp[z]
    x1, x2 = [c for c in (a, u, v, w) if c not in (z, y)]
    M, _ = mc.path_module(ring, ((z, x1), (x1, y)))
    return M, (z, x1, x2, y)


def rhombus_shape_ok(M, corners) -> bool:
    z, x1, x2, y = corners
    layers = mc.radical_series(M)
    return (M.dim == 4 and layers == [{y: 1}, {x1: 1, x2: 1}, {z: 1}]
            and mc.socle_dims(M) == {z: 1})


def check_rhombus_modules(wb: Workbenches, level=None) -> CheckResult:
    ctx = wb[4 if level is None else level]

    def run():
        bad = []
        for t in ctx.patch.tiles:
            for z in t.corners():
                M, corners = rhombus_module(ctx.full, t, z)
                if not rhombus_shape_ok(M, corners):
                    bad.append([list(z), t.tile_type, M.dim])
        n = 4 * len(ctx.patch.tiles)
        return not bad, {"level": ctx.level, "modules": n, "failures": bad[:20]}

    return _timed(5, "rhombus modules", run)


# --- 6-7: exact sequences and truncation ---------------------------------------------

def check_sequences(wb: Workbenches, level=None) -> CheckResult:
    ctx = wb[6 if level is None else level]

    def run():
        counts: dict = {}
        defects = Counter()
        for z in ctx.interior():
            if not ctx.algebra.safe(z):
                continue
            for rot in range(ctx.geometry.degree(z)):
                fr = star_frame(ctx.geometry, z, rot)
                for inst in star_sequences(ctx.full, fr, rot):
                    rec = counts.setdefault(inst.name, [0, 0])
                    rec[0] += inst.exact
                    rec[1] += 1
                if fr.n == 3:
                    defects[two_arrow_defect(ctx.full, fr)] += 1
        ok = all(a == b for a, b in counts.values()) and set(defects) == {2}
        return ok, {"level": ctx.level, "exact_of_total": counts,
                    "three_vertex_kernel_dims": dict(defects)}

    return _timed(6, "exact-sequence suite", run)


def check_truncation(wb: Workbenches, level=None) -> CheckResult:
    ctx = wb[6 if level is None else level]

    def run():
        reps = [arrow_truncation_check(ctx.full, ctx.ring, *a)
                for a in boundary_arrows(ctx.geometry, ctx.vertices)]
        reps = [r for r in reps if r is not None]
        seq = restricted_sequence_report(ctx.full, ctx.ring, near_boundary(ctx.geometry, ctx.vertices))
        cases = Counter(f"{r.part}/{r.angles}" for r in reps)
        ok = bool(reps) and all(r.ok for r in reps) and all(a == b for a, b in seq.values())
        return ok, {"level": ctx.level, "instances": len(reps), "cases": dict(cases),
                    "failures": [r.to_dict() for r in reps if not r.ok],
                    "restricted_sequences": seq}

    return _timed(7, "arrow truncation and exactness of (-)e", run)


# --- 8-9: loops, hearts and B_1 --------------------------------------------------------

def check_loops(wb: Workbenches, level=None) -> CheckResult:
    levels = (6, 7, 8) if level is None else (level,)

    def run():
        ok = True
        per = {}
        for i in levels:
            ctx = wb[i]
            loops = find_loops(ctx.ring)
            want = {v for v, c in ctx.classes.items() if c.kn in ((3, 6), (2, 5))}
            single = all(len(w) == 1 for w in loops.values())
            hearts = {v: mc.heart(ctx.ring, v)[1].simple_summand for v in sorted(loops)}
            good = set(loops) == want and single and all(hearts.values())
            ok &= good
            per[i] = {"loops": [list(v) for v in sorted(loops)],
                      "classes": {str(list(v)): list(ctx.classes[v].kn) for v in sorted(loops)},
                      "expected": len(want), "one_each": single,
                      "simple_heart_summand": sum(hearts.values()), "ok": good}
        return ok, {"levels": per}

    return _timed(8, "loops and decomposable hearts", run)


def check_b1(wb: Workbenches, level=None) -> CheckResult:
    def run():
        p = generate_patch(1)
        big, _ = padded_patch(1, max(wb.cfg.padding, 12), radius=6)
        from .quiver import Geometry
        q = build_quiver(p)
        cl = classify_vertices(q, big)
        B = build_B(q, Geometry(big), wb[1].signs, wb.cfg.make_field())
        rep = check_B1_not_symmetric(B, cl)
        return rep.ok, rep.to_dict()

    return _timed(9, "B_1 is not symmetric", run)


# --- 10-12: periodicity, census, simple modules ------------------------------------------

def check_periodicity(wb: Workbenches, level=None) -> CheckResult:
    levels = (6, 7, 8) if level is None else (level,)

    def run():
        ok = True
        per = {}
        conv = determine_base_convention()
        for i in levels:
            ctx = wb[i]
            big = generate_patch(max(12, i + 3))
            lines = []
            certified = 0
            for ln in ctx.line_candidates:
                cert = certify_periodic_line(ctx, ln, conv, big)
                rep = line_orbit(ctx, ln)
                entry = {"endpoints": [list(v) for v in ln.endpoints], "width": ln.width,
                         "certified": cert.ok, "four_vertex_ends": cert.four_vertex_ends,
                         "turns_ok": cert.turns_ok, "period": rep.period,
                         "expected_period": rep.expected_period, "orbit_ok": rep.ok,
                         "stopped": rep.orbit.stopped,
                         "turn_steps": [t.to_dict() for t in rep.turns]}
                if cert.ok:
                    certified += 1
                    ok &= rep.ok
                lines.append(entry)
            ok &= certified > 0
            per[i] = {"certified": certified, "lines": lines}
        return ok, {"levels": per}

    limit = TIME_LIMITS["periodicity"]
    return _timed(10, "periodicity 2k+2 along certified lines", run, limit)


def check_census(wb: Workbenches, level=None) -> CheckResult:
    def run():
        conv = determine_base_convention()
        tables = {}
        ok = True
        for (m, n) in KNOWN_CONFIGURATIONS:
            res = enumerate_configurations(m, n, conv=conv)
            good = res.matches_table and res.stable and res.count == res.expected
            ok &= bool(good)
            tables[f"{m}x{n}"] = {"count": res.count, "expected": res.expected,
                                  "matches_table": res.matches_table, "stable": res.stable}
        certs = []
        big = generate_patch(12)
        for i in (6, 7, 8, 9):
            ctx = wb[i]
            for ln in ctx.line_candidates:
                c = certify_line_endpoints(ln, ctx.classes, big, conv)
                certs.append({"level": i, **c.to_dict()})
        pad9, _ = padded_patch(9, wb.cfg.padding)
        for k in (1, 2, 3):
            sp = sub_patch(9, k)
            q = build_quiver(sp)
            cl = classify_vertices(q, pad9)
            found = find_periodic_line_candidates(q, cl)
            if not found:
                ok = False
            for ln in found:
                c = certify_line_endpoints(ln, cl, big, conv)
                certs.append({"level": 9, "sub_patch": k, **c.to_dict()})
        ok &= bool(certs) and all(c["ok"] for c in certs)
        return ok, {"convention": conv.to_dict(), "tables": tables, "endpoints": certs}

    return _timed(11, "configuration census and endpoint completions", run)


def check_final(wb: Workbenches, level=None) -> CheckResult:
    ctx = wb[7 if level is None else level]

    def run():
        conv = determine_base_convention()
        for ln in ctx.line_candidates:
            if not certify_periodic_line(ctx, ln, conv).ok:
                continue
            rep = line_orbit(ctx, ln, classify=False)
            if rep.period is None:
                return False, {"level": ctx.level, "reason": "certified line is not periodic"}
            det = simple_detection(ctx.ring, rep.orbit.terms[0], ln, rep.period)
            return det.ok, {"level": ctx.level, "vertices": len(ctx.ring.V), **det.to_dict()}
        return False, {"level": ctx.level, "reason": "no certified line"}

    return _timed(12, "stable homs detect exactly the vertices on L", run)


CHECKS = {
    "tiling": check_tiling,
    "combinatorics": check_combinatorics,
    "dims": check_dims,
    "multiplicity": check_multiplicity,
    "rhombus": check_rhombus_modules,
    "sequences": check_sequences,
    "truncation": check_truncation,
    "loops": check_loops,
    "b1": check_b1,
    "periodicity": check_periodicity,
    "census": check_census,
    "final": check_final,
}


def run_checks(only=None, level=None, cfg: RunConfig | None = None, wb: Workbenches | None = None):
    wb = wb or Workbenches(cfg)
    names = list(CHECKS) if not only else list(only)
    return [CHECKS[n](wb, level) for n in names]
