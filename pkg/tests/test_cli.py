"""Golden-file tests for the command line.

Set ``UPDATE_GOLDEN=1`` to rewrite the expected outputs after an
intentional change, then review the diff.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from freeprod import parse_report, render_report
from freeprod.cli import config_from_args, main, run

GOLDEN = Path(__file__).parent / "golden"


def g(name):
    return str(GOLDEN / name)


CASES = [
    ("decompose_case_three", ["decompose", "--left", g("nine_tenths.json"), "--right", g("m2.json")], 0),
    ("decompose_case_three_json",
     ["decompose", "--left", g("nine_tenths.json"), "--right", g("m2.json"), "--format", "json"], 0),
    ("decompose_case_two", ["decompose", "--left", g("three_quarters.json"), "--right", g("m2.json")], 0),
    ("decompose_m2_m2", ["decompose", "--left", g("m2.json"), "--right", g("m2.json")], 0),
    ("decompose_induction",
     ["decompose", "--engine", "induction", "--left", g("diffuse_fifth.json"), "--right", g("m2.json")], 0),
    ("decompose_two_point", ["decompose", "--left", g("ninety_nine.json"), "--right", g("halves.json")], 1),
    ("decompose_bad_sum", ["decompose", "--left", g("bad_sum.json"), "--right", g("m2.json")], 2),
    ("decompose_missing_file", ["decompose", "--left", g("absent.json"), "--right", g("m2.json")], 2),
    ("vn_case_three", ["vn", "--left", g("nine_tenths.json"), "--right", g("m2.json")], 0),
    ("twoproj_distinct", ["twoproj", "--alpha", "3/4", "--beta", "1/2"], 0),
    ("twoproj_equal", ["twoproj", "--alpha", "3/4", "--beta", "3/4", "--format", "json"], 0),
    ("twoproj_domain", ["twoproj", "--alpha", "1/4", "--beta", "1/2"], 1),
    ("moments_pqpq",
     ["moments", "--left", g("halves.json"), "--right", g("halves.json"),
      "--word", "L:p1 R:p1", "--word", "L:p1 R:p1 L:p1 R:p1"], 0),
    ("moments_syntax_error", ["moments", "--left", g("halves.json"), "--right", g("m2.json"),
                              "--word", "L:p1 R:"], 2),
    ("verify_lemma31", ["verify", "lemma31", "--m", "2", "--n", "2", "--weights", "1/2,1/2",
                        "--samples", "100", "--seed", "7"], 0),
    ("verify_lemma31_part_two", ["verify", "lemma31", "--n", "4", "--l", "2", "--weights", "1/3,2/3",
                                 "--samples", "50", "--seed", "7"], 0),
    ("verify_corollary32", ["verify", "corollary32", "--n", "3", "--weights", "1/4,3/4",
                            "--samples", "30", "--seed", "7"], 0),
    ("verify_haar", ["verify", "haar", "--left", g("diffuse_fifth.json"), "--k-max", "4"], 0),
    ("simulate_rank", ["simulate", "rank", "--seed", "7", "--format", "json"], 0),
]


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys, monkeypatch):
    monkeypatch.delenv("FREEPROD_SEED", raising=False)
    assert main(argv) == code
    out = capsys.readouterr()
    text = (out.out + out.err).replace(str(GOLDEN), "<golden>")
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(text)
    assert text == path.read_text()


def test_simulate_twoproj_example(capsys):
    argv = ["simulate", "twoproj", "--alpha", "7/10", "--beta", "8/10", "--N", "1000", "--trials", "50",
            "--seed", "7", "--format", "json"]
    assert main(argv) == 0
    report = json.loads(capsys.readouterr().out)
    assert abs(report["measured"]["atom1_mass"] - 0.5) <= report["params"]["atom_tolerance"]
    assert report["passed"] is True


def test_simulate_word_small(capsys):
    argv = ["simulate", "word", "--left", g("halves.json"), "--right", g("m2.json"), "--word", "L:p1 R:e11",
            "--N", "200", "--trials", "5", "--seed", "3"]
    assert main(argv) == 0
    assert "verdict: pass" in capsys.readouterr().out


def test_csv_output(tmp_path, capsys):
    target = tmp_path / "eig.csv"
    main(["simulate", "twoproj", "--alpha", "1/2", "--beta", "1/2", "--N", "50", "--trials", "2",
          "--csv", str(target)])
    lines = target.read_text().splitlines()
    assert lines[0] == "eigenvalue" and len(lines) == 101


def test_env_seed_overrides_default(monkeypatch):
    monkeypatch.setenv("FREEPROD_SEED", "123")
    assert config_from_args(["simulate", "rank"]).effective_seed == 123
    assert config_from_args(["simulate", "rank", "--seed", "5"]).effective_seed == 5
    monkeypatch.delenv("FREEPROD_SEED")
    assert config_from_args(["simulate", "rank"]).effective_seed == 42


def test_inline_json_input(capsys):
    inline = '[{"kind": "matrix", "n": 2, "weight": "1"}]'
    assert main(["decompose", "--left", inline, "--right", inline]) == 0
    assert "𝔄 simple with unique trace" in capsys.readouterr().out


def test_missing_required_flag():
    code, text = run(config_from_args(["twoproj", "--alpha", "3/4"]))
    assert code == 2 and "--beta" in text


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [c[1] for c in CASES if c[2] == 0 and "--format" not in c[1]])
def test_json_round_trip(argv, capsys):
    main([*argv, "--format", "json"])
    text = capsys.readouterr().out
    obj = parse_report(text)
    assert render_report(obj, "json") == text.rstrip("\n")


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "freeprod", "twoproj", "--alpha", "3/4", "--beta", "1/2"],
                         capture_output=True, text=True, check=True)
    assert "atom p ∧ q: 1/4" in out.stdout
