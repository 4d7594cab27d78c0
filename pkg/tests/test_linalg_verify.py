from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given

from contactsplit.linalg import is_nonsingular, nullspace, rank, solve
from contactsplit.verify import SUITES, run_verify

small = st.fractions(-3, 3, max_denominator=2)


def mat_vec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def test_rank_and_solve():
    m = [[F(1), F(2)], [F(2), F(4)]]
    assert rank(m) == 1 and not is_nonsingular(m)
    assert solve([[F(2), F(1)], [F(1), F(3)]], [F(3), F(5)]) == [F(4, 5), F(7, 5)]
    with pytest.raises(ValueError):
        solve(m, [F(1), F(0)])


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(m):
    ns = nullspace(m, 4)
    assert rank(m) + len(ns) == 4
    for v in ns:
        assert all(x == 0 for x in mat_vec(m, v))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_solve_consistent_systems(m, x):
    b = mat_vec(m, x)
    sol = solve(m, b)
    assert mat_vec(m, sol) == b


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_each_suite_passes_small(suite):
    rep = run_verify(1, [suite])
    assert rep.ok and rep.checks > 0


def test_verify_guards():
    with pytest.raises(ValueError):
        run_verify(5)
    with pytest.raises(ValueError):
        run_verify(1, ["nonsense"])
