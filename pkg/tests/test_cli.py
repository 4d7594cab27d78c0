import json

from click.testing import CliRunner

from contactsplit.cli import main


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_vanish_text():
    r = run("vanish", "--table", "kahler+", "-n", 2, "-k", 1, "-m", -4, "-i", 2)
    assert r.exit_code == 0
    assert r.output.strip() == "Vanishes [kahler-pos-row1]"
    r = run("vanish", "--table", "cp", "-n", 1, "-k", 1, "-m", -3, "-i", 0)
    assert r.output.startswith("Vanishes [cp-odd-row2")
    r = run("vanish", "--table", "cp", "-n", 1, "-k", 1, "-m", 0, "-i", 0)
    assert r.output.strip() == "NotCovered"


def test_vanish_json_matches_text():
    args = ("vanish", "--table", "cp", "-n", 1, "-k", 1, "-m", -3, "-i", 0)
    rec = json.loads(run(*args, "--json").output)
    assert rec["verdict"] == "Vanishes"
    assert run(*args).output.strip() == f"Vanishes [{', '.join(rec['rules'])}]"


def test_vanish_errors():
    assert run("vanish", "--table", "kahler", "-n", 1, "-k", 1, "-m", 0, "-i", 0).exit_code != 0
    assert run("vanish", "--table", "cp", "-n", 1, "-k", 9, "-m", 0, "-i", 0).exit_code != 0
    assert run("vanish", "--table", "cp", "-n", 1, "-k", 1, "-m", 0, "-i", 7).exit_code != 0


def test_verify_guard():
    r = run("verify", "--n-max", 9)
    assert r.exit_code == 2 and "n-max" in r.output


def test_verify_commutator():
    r = run("verify", "--n-max", 2, "--suite", "commutator")
    assert r.exit_code == 0
    # one record per (n, k) cell, and C(4, k) checks per k at n = 2
    assert "checks=6" in r.output and "PASS:" in r.output


def test_verify_json_records():
    r = run("verify", "--n-max", 3, "--suite", "duality", "--json")
    assert r.exit_code == 0
    recs = [json.loads(line) for line in r.output.splitlines()]
    assert len(recs) == 3
    for rec in recs:
        assert {"suite", "n", "k", "m", "i", "status", "detail"} <= set(rec)
        assert rec["status"] == "pass"


def test_verify_deterministic():
    a = run("verify", "--n-max", 1, "--suite", "iterated", "--seed", 7).output
    b = run("verify", "--n-max", 1, "--suite", "iterated", "--seed", 7).output
    assert a == b


def test_split_demo():
    r = run("split-demo", "-n", 1, "-k", 1, "1")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "X = (1)*d0"
    r = run("split-demo", "-n", 1, "-k", 1, "z1")
    lines = r.output.splitlines()
    assert lines[0] == "X = (1/2)*z1*d0 + (1/2)*d2"
    assert lines[1].endswith("= 0") and lines[2].endswith("= 0")


def test_split_demo_higher_degree():
    r = run("split-demo", "-n", 2, "-k", 3, "z1*X1*X2 - (2/3)*z0^2*X3*X4")
    assert r.exit_code == 0, r.output


def test_split_demo_errors():
    assert run("split-demo", "-n", 1, "-k", 1, "z1 +* 2").exit_code != 0
    assert run("split-demo", "-n", 1, "-k", 2, "z1").exit_code != 0
    assert run("split-demo", "-n", 1, "-k", 2, "X1*X2").exit_code != 0
    assert run("split-demo", "-n", 3, "-k", 1, "1").exit_code != 0


def test_decompose_and_tinvert():
    r = run("decompose", "-n", 2, "1*e{1,2}")
    assert r.output.splitlines() == ["r=0: 1/2*e{1,2} - 1/2*e{3,4}", "r=1: 1/2*e{}"]
    r = run("tinvert", "-n", 2, "2*e{1,2} + 2*e{3,4}")
    assert r.output.strip() == "1*e{1,2} + 1*e{3,4}"
    r = run("tinvert", "-n", 2, "--family", "twisted", "-m", -3, "e{1,2,3,4}")
    assert r.exit_code != 0 and "not well-defined" in r.output


def test_table_command():
    r = run("table", "--table", "cp", "-n", 1, "-k", 1, "--m-min", -2, "--m-max", 0)
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "# table=cp n=1 k=1"
    r = run("table", "--table", "cp", "-n", 1, "-k", 1, "--m-min", -2, "--m-max", 0, "--json")
    assert len(r.output.splitlines()) == 3 * 4
