"""The twelve acceptance criteria, each at its stated scale and time limit.

Every test prints one PASS/FAIL line; the lines are repeated in the terminal
summary under "acceptance criteria".
"""
import pytest

from rauzy.checks import CHECKS

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("name", list(CHECKS))
def test_acceptance(wb, name):
    res = CHECKS[name](wb)
    line = res.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert res.passed, res.detail
