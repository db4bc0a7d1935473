import json

import pytest
from hypothesis import given, settings, strategies as st

from rauzy.checks import TILE_TOTALS, tile_count_recurrence
from rauzy.tiling import Patch, Rhombus, generate_patch, padded_patch, sub_patch, substitute, validate_patch


def test_initial_patch_has_three_tiles():
    p = generate_patch(0)
    assert len(p) == 3
    assert sorted(t.tile_type for t in p.tiles) == [1, 2, 3]


def test_tile_totals_match_recurrence():
    assert tile_count_recurrence(10) == list(TILE_TOTALS)
    assert [len(generate_patch(i)) for i in range(10)] == list(TILE_TOTALS)


@pytest.mark.parametrize("i", range(8))
def test_patches_are_valid(i):
    rep = validate_patch(generate_patch(i))
    assert rep


@given(st.integers(min_value=0, max_value=8))
@settings(max_examples=15, deadline=None)
def test_type_counts_follow_substitution(i):
    # type 1 -> 1,2,3 ; type 2 -> 1 ; type 3 -> 2
    n1, n2, n3 = generate_patch(i).type_counts()
    m1, m2, m3 = generate_patch(i + 1).type_counts()
    assert (m1, m2, m3) == (n1 + n2, n1 + n3, n1)


@given(st.sampled_from([1, 2, 3]), st.tuples(*[st.integers(-5, 5)] * 3))
@settings(max_examples=30, deadline=None)
def test_substitution_is_translation_covariant(tt, w):
    a = sorted((s.tile_type, s.anchor) for s in substitute(Rhombus(tt, (0, 0, 0))))
    b = sorted((s.tile_type, s.anchor) for s in substitute(Rhombus(tt, w)))
    assert [x[0] for x in a] == [x[0] for x in b]
    shifts = {tuple(q - p for p, q in zip(x[1], y[1])) for x, y in zip(a, b)}
    assert len(shifts) == 1


def test_sub_patches_partition_the_patch():
    i = 6
    tiles = {(t.tile_type, t.anchor) for t in generate_patch(i).tiles}
    parts = [{(t.tile_type, t.anchor) for t in sub_patch(i, k).tiles} for k in (1, 2, 3)]
    assert set().union(*parts) == tiles
    assert sum(len(s) for s in parts) == len(tiles)


def test_json_round_trip():
    p = generate_patch(4)
    q = Patch.from_dict(json.loads(p.to_json()))
    assert {(t.tile_type, t.anchor) for t in q.tiles} == {(t.tile_type, t.anchor) for t in p.tiles}


def test_padded_patch_contains_patch():
    big, _ = padded_patch(3, 6)
    assert set(generate_patch(3).vertices()) <= set(big.vertices())
