from rauzy.quiver import (VERTICAL, build_quiver, class_histogram, classify_vertices,
                          find_horizontal_lines, find_periodic_line_candidates)
from rauzy.tiling import generate_patch


def test_arrows_come_in_opposite_pairs():
    q = build_quiver(generate_patch(4))
    arrows = q.arrow_set
    assert all((t, s) in arrows for s, t in arrows)
    assert len(q.edges()) * 2 == len(arrows)


def test_classes_of_p6(ctx6):
    hist = class_histogram(ctx6.classes)
    assert (2, 6) not in hist
    assert max(n - k for k, n in hist) <= 3
    assert sum(hist.values()) == len(ctx6.vertices)
    # interior vertices have k = n
    for v in ctx6.interior():
        c = ctx6.classes[v]
        assert c.k == c.n and not c.boundary


def test_horizontal_lines_are_horizontal(ctx6):
    g = ctx6.quiver.geometry
    for ln in find_horizontal_lines(ctx6.quiver):
        for u, w in ln.edges():
            d = [k for k, x in g.nbr[u].items() if x == w][0]
            assert d not in VERTICAL
        assert ln.width == ln.endpoints[1][0] - ln.endpoints[0][0]


def test_line_candidates_end_in_boundary_four_vertices(ctx6):
    cands = find_periodic_line_candidates(ctx6.quiver, ctx6.classes)
    assert len(cands) == 2
    for ln in cands:
        for e in ln.endpoints:
            assert ctx6.classes[e].n == 4 and ctx6.classes[e].boundary
    assert {ln.width for ln in cands} == {11}
