"""Orbits along horizontal lines, including a line that is not periodic."""
import pytest

from rauzy import modcalc as mc
from rauzy.periodic import (boundary_arrows, arrow_truncation_check, certify_periodic_line, far_corners,
                            line_orbit, truncation_hypothesis)

GOOD = ((-3, -3), (8, 2))
BAD = ((-5, 0), (6, 5))


def _line(ctx, ends):
    return next(ln for ln in ctx.line_candidates if tuple(ln.endpoints) == ends)


def test_certified_line_has_period_2k_plus_2(ctx6):
    ln = _line(ctx6, GOOD)
    assert certify_periodic_line(ctx6, ln).ok
    rep = line_orbit(ctx6, ln)
    assert rep.period == 2 * ln.width + 2 == 24
    assert rep.along_line
    assert len(rep.turns) == 2 and all(t.ok for t in rep.turns)
    assert {t for t, _ in rep.tags} == {"arrow", "arrow sum", "arrow pair", "turn"}


def test_line_with_a_far_corner_inside_is_not_periodic(ctx6):
    # both ends are boundary 4-vertices with the right completions, but at
    # (6, 5) a rhombus along the outside arrow has its far corner back in P_6
    ln = _line(ctx6, BAD)
    cert = certify_periodic_line(ctx6, ln)
    assert cert.four_vertex_ends and not cert.turns_ok
    (arrow, ok), = cert.turns[(6, 5)]
    assert not ok and (7, 4) in far_corners(ctx6.geometry, *arrow)
    rep = line_orbit(ctx6, ln, classify=False)
    assert rep.period is None and "exceeds" in rep.orbit.stopped


def test_truncation_hypothesis_needs_outside_target(ctx6):
    u = next(iter(ctx6.interior()))
    w = next(iter(ctx6.geometry.nbr[u].values()))
    assert not truncation_hypothesis(ctx6.geometry, ctx6.vertices, u, w)


def test_arrow_truncation_on_a_few_arrows(ctx6):
    arrows = boundary_arrows(ctx6.geometry, ctx6.vertices)
    assert arrows
    for a in arrows[:3]:
        rep = arrow_truncation_check(ctx6.full, ctx6.ring, *a)
        assert rep is not None and rep.ok, rep.to_dict()


def test_reverse_start_gives_same_period(ctx6):
    ln = _line(ctx6, GOOD)
    assert line_orbit(ctx6, ln, end=1, classify=False).period == 24
