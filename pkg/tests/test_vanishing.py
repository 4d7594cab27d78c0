import json
import re

import hypothesis.strategies as st
import pytest
from hypothesis import given

from contactsplit import vanishing as V


def test_splitting_examples():
    assert V.splitting_ok(2, 1, 0).rules == ("split-row3",)
    assert V.splitting_ok(2, 2, -3).rules == ("split-row2",)
    assert not V.splitting_ok(2, 4, -5)
    with pytest.raises(ValueError):
        V.splitting_ok(2, 6, 0)


def test_splitting_cp_examples():
    assert "split-cp-odd-row2" in V.splitting_ok_cp(1, 1, -5).rules
    assert V.splitting_ok_cp(1, 1, 0).rules == ("split-cp-even-row3",)
    assert V.splitting_ok_cp(2, 2, -6).rules == ("split-cp-even-row2",)


def test_kahler_examples():
    assert str(V.vanishes_kahler(2, 1, -4, 2, "+")) == "Vanishes [kahler-pos-row1]"
    assert V.vanishes_kahler(2, 1, -2, 5, "+").rules == ("kahler-pos-row2",)
    assert str(V.vanishes_kahler(2, 1, -1, 1, "+")) == "NotCovered"
    with pytest.raises(ValueError):
        V.vanishes_kahler(2, 1, -1, 1, "0")
    with pytest.raises(ValueError):
        V.vanishes_kahler(2, 1, -1, 6, "+")


def test_kahler_negative_rows():
    # n=2, k=1: row 1 needs i >= 2 and m <= -4
    assert V.vanishes_kahler(2, 1, -4, 2, "-").rules == ("kahler-neg-row1",)
    assert V.vanishes_kahler(2, 1, -3, 3, "-").rules == ("kahler-neg-row2",)
    assert V.vanishes_kahler(2, 1, -1, 2, "-").rules == ("kahler-neg-row3",)
    assert V.vanishes_kahler(2, 1, 0, 3, "-").rules == ("kahler-neg-row4",)
    assert not V.vanishes_kahler(2, 1, 0, 4, "-")


def test_cp_examples():
    v = V.vanishes_cp(1, 1, -3, 0)
    assert v.vanishes and "cp-odd-row2" in v.rules
    # every matching row is listed, not just the first
    assert v.rules == ("cp-odd-row2", "cp-odd-row3")
    assert V.vanishes_cp(1, 1, -2, 2).rules == ("cp-even-row4",)
    assert not V.vanishes_cp(1, 1, -2, 1).vanishes
    assert str(V.vanishes_cp(1, 1, 0, 0)) == "NotCovered"


def test_corrected_odd_row():
    row = V.CP_ODD_RULES[3]
    assert row(2, 2, 5, 3) and not row(2, 2, -5, 3)
    assert row.note


def test_serre_dual_examples():
    assert V.serre_dual_cp(1, 1, 0, 0) == (3, -6)
    assert V.serre_dual_cp(2, 2, -4, 1) == (4, -6)


@given(st.integers(1, 4), st.data())
def test_serre_dual_involution(n, data):
    k = data.draw(st.integers(1, 2 * n + 1))
    i = data.draw(st.integers(0, 2 * n + 1))
    m = data.draw(st.integers(-50, 50))
    i2, m2 = V.serre_dual_cp(n, k, m, i)
    assert V.serre_dual_cp(n, k, m2, i2) == (i, m)


def test_duality_closure():
    report = V.duality_closure_check(3)
    assert report.ok and report.vanishing > 0


def test_even_row_duality_pairs():
    # dual of "i != 0, m >= -2[k/2]" is the "i != 2n+1" row
    for n in range(1, 4):
        for k in range(1, 2 * n + 2):
            m = -2 * (k // 2)
            i2, m2 = V.serre_dual_cp(n, k, m, 1)
            assert m2 == -2 * n - 2 - 2 * ((k + 1) // 2)
            assert V.CP_EVEN_RULES[0](n, k, m2, i2)
            # self-dual interval row maps its endpoints onto each other
            lo, hi = -2 * n, -2 * k - 2
            assert V.serre_dual_cp(n, k, lo, 0)[1] == hi
            assert V.serre_dual_cp(n, k, hi, 0)[1] == lo


def test_kahler_row2_self_dual():
    row = V.KAHLER_POS_RULES[1]
    for n in range(1, 5):
        for k in range(1, 2 * n + 2):
            for m in range(-3 * n - 3, n + 3):
                for i in range(2 * n + 2):
                    i2, m2 = V.serre_dual_kahler(n, k, m, i)
                    assert row(n, k, m, i) == row(n, k, m2, i2)


def test_even_cp_splitting_equals_general_at_half():
    for n in range(1, 4):
        for k in range(1, 2 * n + 2):
            for m in range(-40, 21, 2):
                assert bool(V.splitting_ok_cp(n, k, m)) == bool(V.splitting_ok(n, k, m // 2))


def test_rule_ids_unique():
    ids = [r.id for r in V.ALL_RULES]
    assert len(ids) == len(set(ids))


def test_table_text_and_json_agree():
    text = list(V.emit_table("cp", 1, [1], range(-3, 1)))
    recs = [json.loads(line) for line in V.emit_table("cp", 1, [1], range(-3, 1), fmt="json")]
    assert len(recs) == 4 * 4
    grid = {}
    for line in text[2:]:
        row = re.match(r"m=\s*(-?\d+) (.*)$", line)
        m = int(row.group(1))
        for i, mark in enumerate(row.group(2).split()):
            grid[(m, i)] = mark == "V"
    for r in recs:
        assert grid[(r["m"], r["i"])] == (r["verdict"] == "Vanishes")
        assert set(r) == {"n", "k", "m", "i", "verdict", "rules"}
