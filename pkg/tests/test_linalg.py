import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from rauzy import linalg
from rauzy.errors import ConfigError
from rauzy.linalg import PrimeField, RationalField, make_field, rref_mod_p

mats = st.integers(1, 9).flatmap(
    lambda r: st.integers(1, 9).flatmap(
        lambda c: arrays(np.int64, (r, c), elements=st.integers(0, 6))))


@given(mats)
@settings(max_examples=60, deadline=None)
def test_jit_and_numpy_rref_agree(a):
    p = 7
    ref = rref_mod_p(a.copy(), p, jit=False)
    if linalg._rref_mod_p_jit is not None:
        assert np.array_equal(np.asarray(ref), np.asarray(rref_mod_p(a.copy(), p, jit=True)))


@given(mats)
@settings(max_examples=40, deadline=None)
def test_rank_nullity(a):
    F = PrimeField(7)
    a = F.asarray(a)
    ns = F.nullspace(a)
    assert F.rank(a) + ns.shape[0] == a.shape[0]
    if ns.shape[0]:
        assert F.is_zero(F.matmul(ns, a))


def test_rational_field_exact():
    F = RationalField()
    a = F.asarray([[1, 2], [3, 4]])
    inv = F.inverse(a)
    assert inv[0, 0] == Fraction(-2)
    assert F.rank(F.asarray([[1, 2], [2, 4]])) == 1


def test_make_field_rejects_bad_input():
    with pytest.raises(ConfigError):
        make_field("real")
    with pytest.raises(ConfigError):
        make_field("prime", 2)


@pytest.mark.parametrize("value, expected", [("1", "False"), ("0", "True")])
def test_no_jit_env_switch(value, expected):
    if expected == "True" and linalg._rref_mod_p_jit is None:
        pytest.skip("numba not importable")
    env = dict(os.environ, RAUZY_NO_JIT=value)
    out = subprocess.run([sys.executable, "-c", "from rauzy import linalg; print(linalg.USE_JIT)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
