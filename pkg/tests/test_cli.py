"""Command-line interface, driven through click's test runner."""

import json

from click.testing import CliRunner

from hypconv.cli import main, parse_term_text, TermFileError

import pytest

ACCEPTED = """
xi = "-1"
theta = "-1"
P = [[0, 0, "1", "0"]]
factors = [["1/3", "0", 1, 1], ["-3/2", "0", 0, 1], ["2/3", "0", -1, 0],
           ["7/3", "0", 2, 0], ["-4/3", "0", -2, -1]]
"""

REJECTED_PFQ = """
[pfq]
upper = [["1/3", "0", 2], ["1/2", "0", 0]]
lower = [["5/4", "0", 1]]
argument = ["1", "0"]
"""

GEOMETRIC = """
xi = "1"
theta = "1/3"
factors = []
"""


def run(args, text=None):
    runner = CliRunner()
    with runner.isolated_filesystem():
        if text is not None:
            with open("term.toml", "w") as fh:
                fh.write(text)
        result = runner.invoke(main, args, catch_exceptions=False)
    return result


def test_check_accepts():
    res = run(["check", "term.toml"], ACCEPTED)
    assert res.exit_code == 0
    assert "YES" in res.output


def test_check_rejects_with_diagnostics():
    res = run(["check", "term.toml"], REJECTED_PFQ)
    assert res.exit_code == 1
    assert "NO" in res.output
    assert "FAIL" in res.output


def test_check_json_round_trips():
    res = run(["check", "--format", "json", "term.toml"], ACCEPTED)
    doc = json.loads(res.output)
    assert doc["uniform"] is True
    assert len(doc["conditions"]) == 7


def test_limit_accepted_term():
    res = run(["limit", "--format", "json", "term.toml"], ACCEPTED)
    assert res.exit_code == 0
    doc = json.loads(res.output)
    # dressed Gauss sum with |alpha| < gamma: limit (1 - 1/2) ** (3/2)
    want = 0.5 ** 1.5
    assert abs(doc["value"][0] - want) < 1e-9
    assert abs(doc["value"][1]) < 1e-9


def test_limit_refuses_rejected_term():
    res = run(["limit", "term.toml"], REJECTED_PFQ)
    assert res.exit_code == 1
    assert "not uniformly dominated" in res.output


def test_sample_g_csv():
    res = run(["sample-g", "--points", "50", "--t-max", "5", "term.toml"],
              ACCEPTED)
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0] == "t,g,region"
    assert len(lines) == 51
    for ln in lines[1:]:
        t, g, region = ln.split(",")
        assert float(g) > 0
        assert region in ("pre-shear", "post-shear", "no-shear-points")


def test_oracle_agreement():
    res = run(["oracle", "--k-max", "300", "--format", "json", "term.toml"],
              GEOMETRIC)
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["agrees_with_exact"] is True
    assert doc["classification"] == "converges"


def test_bad_input_exit_code_and_message():
    res = run(["check", "term.toml"], "xi = \"1\"\n")
    assert res.exit_code == 2
    assert "missing required field 'theta'" in res.output


def test_parse_errors_point_at_fields():
    with pytest.raises(TermFileError, match="pfq block is missing 'lower'"):
        parse_term_text("[pfq]\nupper = []\nargument = [\"1\", \"0\"]\n")
    with pytest.raises(TermFileError, match="bad rational"):
        parse_term_text(GEOMETRIC.replace('"1/3"', '"1/x"'))
    with pytest.raises(TermFileError, match="inadmissible"):
        # an integer base marching backwards hits a zero denominator
        parse_term_text(ACCEPTED.replace('"2/3", "0", -1, 0',
                                         '"2", "0", -1, 0'))


def test_parse_pfq_matches_direct_description():
    term = parse_term_text(REJECTED_PFQ)
    # the upper-shift rewrite folds a reflection sign into xi
    assert term.xi.re == -1
    assert any(f.alpha == 2 for f in term.factors)
