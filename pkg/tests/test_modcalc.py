import pytest
from hypothesis import given, settings, strategies as st

from rauzy import modcalc as mc


@pytest.fixture(scope="module")
def ring(ctx4):
    return ctx4.ring


@pytest.fixture(scope="module")
def arrows(ctx4):
    V = ctx4.vertices
    g = ctx4.geometry
    return sorted((u, w) for u in V for w in g.nbr[u].values() if w in V)


def test_projective_has_no_syzygy(ring, ctx4):
    z = ctx4.interior()[0]
    P = mc.projective(ring, z)
    assert mc.syzygy(P).dim == 0
    assert mc.has_projective_summand(P)


def test_simple_module(ring, ctx4):
    z = ctx4.interior()[0]
    S = mc.simple(ring, z)
    assert S.dim == 1 and mc.top_dims(S) == mc.socle_dims(S) == {z: 1}


@given(st.data())
@settings(max_examples=12, deadline=None)
def test_syzygy_dimension_shift(ring, arrows, data):
    # 0 -> ΩM -> P(M) -> M -> 0
    a = data.draw(st.sampled_from(arrows))
    M, _ = mc.path_module(ring, (a,))
    P, _ = mc.projective_cover(M)
    assert mc.syzygy(M).dim == P.dim - M.dim


@given(st.data())
@settings(max_examples=8, deadline=None)
def test_cosyzygy_undoes_syzygy(ring, arrows, data):
    a = data.draw(st.sampled_from(arrows))
    M, _ = mc.path_module(ring, (a,))
    assert mc.is_isomorphic(mc.cosyzygy(mc.syzygy(M)), M)


def test_isomorphism_detects_difference(ring, arrows):
    a, b = arrows[0], arrows[1]
    Ma, _ = mc.path_module(ring, (a,))
    Mb, _ = mc.path_module(ring, (b,))
    assert mc.is_isomorphic(Ma, Ma)
    assert not mc.is_isomorphic(Ma, Mb)


def test_stable_hom_vanishes_from_projectives(ring, ctx4):
    z = ctx4.interior()[0]
    P = mc.projective(ring, z)
    assert mc.hom_dim(P, mc.simple(ring, z)) == 1
    assert mc.stable_hom_dim(P, mc.simple(ring, z)) == 0


def test_orbit_stops_at_projective(ring, ctx4):
    z = ctx4.interior()[0]
    orb = mc.omega_orbit(mc.projective(ring, z))
    assert orb.period is None and orb.stopped == "projective"


def test_orbit_dimension_cap(ring, arrows):
    M, _ = mc.path_module(ring, (arrows[0],))
    orb = mc.omega_orbit(M, max_steps=40, max_dim=1)
    assert orb.period is None and "exceeds" in orb.stopped
