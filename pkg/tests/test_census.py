import pytest
from hypothesis import given, settings, strategies as st

from rauzy.census import (LEFT_END, RIGHT_END, KNOWN_CONFIGURATIONS, certify_line_endpoints, configurations,
                          determine_base_convention, enumerate_configurations, interior_points, window)
from rauzy.tiling import generate_patch


@pytest.fixture(scope="module")
def conv():
    return determine_base_convention()


@pytest.fixture(scope="module")
def p10():
    return generate_patch(10)


def test_window_layout():
    assert window(0, 0, 2, 2) == [[(1, 1), (2, 1)], [(1, 0), (2, 0)]]


def test_base_convention_is_unique_up_to_translation(conv):
    assert len(conv.survivors) == 6
    assert len(conv.classes) == 2
    assert conv.disambiguated
    assert conv.corner in conv.classes


def test_every_interior_point_is_one_base(conv, p10):
    inner = interior_points(p10)
    bases = [conv.base(t) for t in p10.tiles]
    assert all(bases.count(v) == 1 for v in list(inner)[:200])


@pytest.mark.parametrize("mn", sorted(KNOWN_CONFIGURATIONS))
def test_table_configurations(conv, mn):
    res = enumerate_configurations(*mn, conv=conv)
    assert res.matches_table and res.stable
    assert res.count == res.expected == len(KNOWN_CONFIGURATIONS[mn])


@given(st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=10, deadline=None)
def test_counts_are_mn_plus_m_plus_n(conv, p10, m, n):
    assert len(configurations(p10, m, n, conv)) == m * n + m + n


def test_endpoint_completions(conv, ctx6):
    big = generate_patch(12)
    for ln in ctx6.line_candidates:
        cert = certify_line_endpoints(ln, ctx6.classes, big, conv)
        assert cert.left_config == LEFT_END and cert.right_config == RIGHT_END
        assert cert.ok
