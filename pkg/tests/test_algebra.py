import pytest

from rauzy import modcalc as mc
from rauzy.algebra import (LocalAlgebra, SignAssignment, X_DIM_TABLE, default_signs, find_loops,
                           symmetry_witness, validate_algebra)
from rauzy.checks import multiplicities_at
from rauzy.errors import ConfigError
from rauzy.workbench import LevelContext


def test_parity_signs_validate(ctx4):
    rep = validate_algebra(ctx4.algebra, ctx4.interior())
    assert rep.ok and rep.checked == len(ctx4.interior())


@pytest.mark.parametrize("scheme", ["uniform", "all-plus"])
def test_translation_invariant_signs_fail(ctx4, scheme):
    alg = LocalAlgebra(ctx4.geometry, default_signs(scheme=scheme), ctx4.field)
    assert not validate_algebra(alg, ctx4.interior()).ok


@pytest.mark.parametrize("triple", [(1, 1, -1), (-1, -1, 1), (1, 1, 1)])
def test_single_vertex_sign_corruption_is_caught(ctx4, triple):
    z = ctx4.interior()[0]
    alg = LocalAlgebra(ctx4.geometry, SignAssignment("parity", {z: triple}), ctx4.field)
    rep = validate_algebra(alg, ctx4.interior())
    assert not rep.ok
    assert any(v == z for v, _ in rep.failures)


def test_unknown_sign_scheme():
    with pytest.raises(ConfigError):
        default_signs(scheme="nonsense")


def test_sign_assignment_round_trip():
    s = SignAssignment("parity", {(1, 2): (1, -1, -1)})
    assert SignAssignment.from_dict(s.to_dict()) == s


def test_x_dims_by_degree(ctx6):
    for z in ctx6.interior():
        n = ctx6.geometry.degree(z)
        assert ctx6.algebra.projective(z).graded_dims(z).get(2, 0) == X_DIM_TABLE[n]


def test_projective_multiplicities(ctx6):
    z = ctx6.interior()[0]
    pr = ctx6.algebra.projective(z)
    got = {y: d for y, d in pr.dim_vector().items() if d}
    assert got == multiplicities_at(ctx6.algebra, z)
    assert sum(got.values()) == 4 * ctx6.geometry.degree(z)


def test_projective_dims_agree_with_module_calculus(ctx4):
    z = ctx4.interior()[0]
    P = mc.projective(ctx4.full, z)
    assert P.dim == 4 * ctx4.geometry.degree(z)
    assert mc.loewy_length(P) == 5
    assert mc.socle_dims(P) == {z: 1} and mc.top_dims(P) == {z: 1}


@pytest.mark.parametrize("level", [2, 3])
def test_truncations_are_symmetric(level):
    ctx = LevelContext(level)
    assert symmetry_witness(ctx.ring)["ok"]


def test_loops_sit_at_three_six_vertices(ctx6):
    loops = find_loops(ctx6.ring)
    assert loops
    assert {ctx6.classes[v].kn for v in loops} <= {(3, 6), (2, 5)}
