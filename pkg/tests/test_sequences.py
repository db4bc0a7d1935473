from rauzy.sequences import star_sequences, star_frame, two_arrow_defect


def _vertex_of_degree(ctx, n):
    return next(z for z in ctx.interior() if ctx.algebra.safe(z) and ctx.geometry.degree(z) == n)


def test_sequences_exact_at_a_four_vertex(ctx6):
    z = _vertex_of_degree(ctx6, 4)
    for rot in range(4):
        insts = star_sequences(ctx6.full, star_frame(ctx6.geometry, z, rot), rot)
        assert insts
        assert all(inst.exact for inst in insts), [i.name for i in insts if not i.exact]


def test_sequences_exact_at_a_six_vertex(ctx6):
    z = _vertex_of_degree(ctx6, 6)
    insts = star_sequences(ctx6.full, star_frame(ctx6.geometry, z, 0), 0)
    assert all(inst.exact for inst in insts)


def test_two_arrow_sequence_fails_at_three_vertices(ctx6):
    z = _vertex_of_degree(ctx6, 3)
    for rot in range(3):
        assert two_arrow_defect(ctx6.full, star_frame(ctx6.geometry, z, rot)) == 2
