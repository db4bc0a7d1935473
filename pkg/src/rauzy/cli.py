"""Command line: ``rauzy tile``, ``rauzy analyze`` and ``rauzy verify-all``.

Every flag can also be set through an environment variable ``RAUZY_<FLAG>``
(for example ``RAUZY_LEVEL=7``); explicit flags win.  Exit status is 0 when
all checks pass, 1 when a check fails and 2 for a configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import modcalc as mc
from .algebra import X_DIM_TABLE, default_signs, find_loops, validate_algebra
from .checks import CHECKS, Workbenches, run_checks
from .errors import ConfigError, RauzyError
from .quiver import build_quiver, class_histogram, classify_vertices, find_periodic_line_candidates
from .render import count_tiles, patch_svg
from .tiling import sub_patch
from .workbench import LevelContext, RunConfig

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
MAX_LEVEL = 14

log = logging.getLogger("rauzy")

# flag -> (type, default); env var is RAUZY_<FLAG upper>
GLOBAL_FLAGS = {
    "level": (int, None),
    "field": (str, "prime"),
    "prime": (int, 5),
    "padding": (int, RunConfig.padding),
    "signs": (str, "parity"),
    "seed": (int, RunConfig.seed),
    "out": (str, None),
    "only": (str, None),
}


def _env_bool(v: str) -> bool:
    return v.strip().lower() in ("1", "true", "yes", "on")


def _resolve(args, env=os.environ) -> dict:
    """Merge flags over environment over defaults."""
    out = {}
    for name, (typ, default) in GLOBAL_FLAGS.items():
        val = getattr(args, name, None)
        if val is None:
            raw = env.get(f"RAUZY_{name.upper()}")
            if raw is not None and raw != "":
                try:
                    val = typ(raw)
                except ValueError:
                    raise ConfigError(f"RAUZY_{name.upper()}={raw!r} is not a valid {typ.__name__}")
        out[name] = default if val is None else val
    hl = getattr(args, "highlight_lines", None)
    if hl is None:
        hl = _env_bool(env.get("RAUZY_HIGHLIGHT_LINES", "0"))
    out["highlight_lines"] = hl
    return out


def _config(opts: dict, default_level: int) -> RunConfig:
    level = default_level if opts["level"] is None else opts["level"]
    if not 0 <= level <= MAX_LEVEL:
        raise ConfigError(f"level must be between 0 and {MAX_LEVEL}, got {level}")
    if opts["padding"] < 2:
        raise ConfigError("padding must be at least 2")
    cfg = RunConfig(level, opts["field"], opts["prime"], opts["padding"], opts["signs"], opts["seed"])
    cfg.make_field()  # validates field and prime
    default_signs(scheme=cfg.signs)
    mc.set_seed(cfg.seed)
    return cfg


def _envelope(kind: str, cfg: RunConfig, **payload) -> dict:
    return {"schema": f"rauzy.{kind}", "schema_version": SCHEMA_VERSION, "config": cfg.to_dict(), **payload}


def _write_json(doc: dict, out: str | None, name: str) -> Path | None:
    text = json.dumps(doc, indent=1, default=str)
    if out is None:
        return None
    path = Path(out)
    if path.suffix != ".json":
        path.mkdir(parents=True, exist_ok=True)
        path = path / name
    path.write_text(text)
    return path


# --- commands --------------------------------------------------------------------

def highlighted_lines(cfg: RunConfig) -> list:
    """Line candidates of ``P_i`` and of its three sub-patches ``R^i(R_k)``."""
    ctx = LevelContext.from_config(cfg)
    found = {tuple(ln.endpoints): ln for ln in ctx.line_candidates}
    if cfg.level >= 1:
        for k in (1, 2, 3):
            q = build_quiver(sub_patch(cfg.level, k))
            for ln in find_periodic_line_candidates(q, classify_vertices(q, ctx.window)):
                found.setdefault(tuple(ln.endpoints), ln)
    return [found[k] for k in sorted(found)]


def cmd_tile(cfg: RunConfig, opts: dict, args) -> int:
    ctx = LevelContext.from_config(cfg)
    p = ctx.patch
    lines = highlighted_lines(cfg) if opts["highlight_lines"] else []
    svg = patch_svg(p, [ln.edges() for ln in lines], title=f"P_{cfg.level}")
    doc = _envelope("patch", cfg, patch=p.to_dict(), tiles=len(p.tiles),
                    highlighted_lines=[ln.to_dict() for ln in lines])
    svg_path = args.svg
    if svg_path is None and opts["out"] is not None:
        svg_path = str(Path(opts["out"]).with_suffix("") / f"P{cfg.level}.svg") \
            if Path(opts["out"]).suffix != ".json" else str(Path(opts["out"]).with_suffix(".svg"))
    if svg_path:
        Path(svg_path).parent.mkdir(parents=True, exist_ok=True)
        Path(svg_path).write_text(svg)
    jpath = _write_json(doc, opts["out"], f"P{cfg.level}.json")
    print(f"P_{cfg.level}: {count_tiles(svg)} tiles rendered"
          + (f", {len(lines)} lines highlighted" if lines else ""))
    for what, path in (("svg", svg_path), ("json", jpath)):
        if path:
            print(f"  {what}: {path}")
    return EXIT_OK


def cmd_analyze(cfg: RunConfig, opts: dict, args) -> int:
    ctx = LevelContext.from_config(cfg)
    classes = ctx.classes
    hist = class_histogram(classes)
    gap = max(c.n - c.k for c in classes.values())
    inner = ctx.interior()
    rep = validate_algebra(ctx.algebra, inner)
    xdims: dict = {}
    for z in inner:
        if ctx.algebra.safe(z):
            n = ctx.geometry.degree(z)
            xdims.setdefault(n, set()).add(ctx.algebra.projective(z).graded_dims(z).get(2, 0))
    loops = find_loops(ctx.ring) if cfg.level >= 1 else {}
    loop_classes = {v: classes[v].kn for v in loops}
    loops_ok = all(kn in ((3, 6), (2, 5)) for kn in loop_classes.values())
    x_ok = all(ds == {X_DIM_TABLE.get(n)} for n, ds in xdims.items())
    ok = rep.ok and gap <= 3 and (2, 6) not in hist and loops_ok and x_ok
    doc = _envelope(
        "analysis", cfg,
        vertices=len(classes), class_histogram={f"{k},{n}": c for (k, n), c in hist.items()},
        max_n_minus_k=gap, x_dims={str(n): sorted(ds) for n, ds in sorted(xdims.items())},
        x_dim_table={str(n): d for n, d in X_DIM_TABLE.items()},
        loops=[{"vertex": list(v), "class": list(loop_classes[v])} for v in sorted(loops)],
        validation=rep.to_dict(), signs=ctx.signs.to_dict(), ok=ok)
    path = _write_json(doc, opts["out"], f"analysis_P{cfg.level}.json")
    print(f"P_{cfg.level}: {len(classes)} vertices, max n-k = {gap}")
    print("  classes (k,n): " + " ".join(f"({k},{n})x{c}" for (k, n), c in hist.items()))
    print("  dim X_z by degree: " + ", ".join(f"{n}->{'/'.join(map(str, sorted(ds)))}" for n, ds in sorted(xdims.items())))
    print(f"  loops: {len(loops)} at classes {sorted(set(loop_classes.values()))}")
    print(f"  validation: {rep.checked} vertices, {len(rep.failures)} failures")
    for v, msg in rep.failures[:10]:
        print(f"    {v}: {msg}")
    if path:
        print(f"  json: {path}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_all(cfg: RunConfig, opts: dict, args) -> int:
    only = None
    if opts["only"]:
        only = [s.strip() for s in opts["only"].split(",") if s.strip()]
        unknown = [s for s in only if s not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown check(s) {unknown}; choose from {sorted(CHECKS)}")
    wb = Workbenches(cfg)
    results = []
    for name in only or list(CHECKS):
        r = run_checks([name], level=opts["level"], wb=wb)[0]
        print(r.line(), flush=True)
        if name == "periodicity":
            _print_periods(r)
        results.append(r)
    passed = all(r.passed for r in results)
    doc = _envelope("verify", cfg, passed=passed, checks=[r.to_dict() for r in results])
    path = _write_json(doc, opts["out"], "verify.json")
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    if path:
        print(f"  json: {path}")
    return EXIT_OK if passed else EXIT_FAIL


def _print_periods(r) -> None:
    for level, info in r.detail.get("levels", {}).items():
        for ln in info["lines"]:
            ends = " -> ".join(str(tuple(e)) for e in ln["endpoints"])
            k = ln["width"]
            if ln["certified"]:
                print(f"    P_{level} line {ends}: width {k}, period {ln['period']} (2k+2 = {2 * k + 2})")
            else:
                print(f"    P_{level} line {ends}: width {k}, not certified, orbit {ln['stopped'] or 'period ' + str(ln['period'])}")


COMMANDS = {"tile": (cmd_tile, 6), "analyze": (cmd_analyze, 6), "verify-all": (cmd_verify_all, None)}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, help="patch level i (env RAUZY_LEVEL)")
    common.add_argument("--field", choices=["prime", "rational"], help="coefficient field")
    common.add_argument("--prime", type=int, help="characteristic for --field prime (default 5)")
    common.add_argument("--padding", type=int, help="extra substitution steps for the surrounding window")
    common.add_argument("--signs", help="sign scheme for the star relations (default parity)")
    common.add_argument("--seed", type=int, help="seed for randomised isomorphism searches")
    common.add_argument("--out", help="output directory, or a .json file")
    common.add_argument("--only", help="comma separated check names for verify-all")
    common.add_argument("--highlight-lines", dest="highlight_lines", action="store_true", default=None,
                        help="draw horizontal lines joining boundary 4-vertices")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="rauzy", description="Rauzy tiling patches and their rhombal algebras.")
    sub = ap.add_subparsers(dest="command", required=True)
    t = sub.add_parser("tile", parents=[common], help="generate P_i as JSON and SVG")
    t.add_argument("--svg", help="path of the SVG file")
    sub.add_parser("analyze", parents=[common], help="vertex classes, X_z dims, loops and validation")
    sub.add_parser("verify-all", parents=[common], help=f"run the acceptance checks ({', '.join(CHECKS)})")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fn, default_level = COMMANDS[args.command]
    try:
        opts = _resolve(args)
        cfg = _config(opts, RunConfig.level if default_level is None else default_level)
        return fn(cfg, opts, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RauzyError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
