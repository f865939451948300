import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from wkframes import cli
from wkframes.errors import ParseError, ValidationError
from wkframes.problem import dump_problem, parse_problem

DATA = Path(__file__).parent / "data"
GOLDEN = [("bounds", "onb_bounds"), ("woven", "woven_swap"), ("cert", "c29_doubled_onb"),
          ("woven", "sampled_woven")]

MINIMAL = '{"dim": 2, "frames": {"F": [[1, 0], [0, 1]]}, "task": {"families": ["F"]}}'


def test_parse_minimal():
    p = parse_problem(MINIMAL)
    assert p.dim == 2 and list(p.frames) == ["F"]
    np.testing.assert_array_equal(p.family("F").vectors, np.eye(2))


def test_parse_complex_operator():
    p = parse_problem('{"dim": 2, "operators": {"K": [[[1,0],[0,0]],[[0,0],[0,0]]]}}')
    np.testing.assert_array_equal(p.operator("K"), np.diag([1.0, 0.0]))
    p = parse_problem('{"dim": 1, "frames": {"F": [[[0, 2]]]}}')
    assert p.family("F")[0][0] == 2j


def test_undefined_name():
    with pytest.raises(ValidationError, match='H'):
        parse_problem('{"dim": 2, "frames": {"F": [[1, 0]]}, "task": {"families": ["H"]}}')


@pytest.mark.parametrize("text", ['{"dim": 2,', '{"dim": 2} x', "[1, 2"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError, match="line 1, column"):
        parse_problem(text)


@pytest.mark.parametrize("text", [
    '{"dim": 0}',
    '{"dim": 2, "frames": {"F": [[1, 0, 0]]}}',
    '{"dim": 2, "frames": {"F": [[1, "a"]]}}',
    '{"dim": 2, "operators": {"K": [[1, 0], [1]]}}',
    '{"dim": 2, "task": {"bogus": 1}}',
    '{"dim": 2, "task": {"budget": 1.5}}',
    '{"dim": 2, "frames": {"F": [[1e400, 0]]}}',
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_problem(text)


@pytest.mark.parametrize("name", [g[1] for g in GOLDEN])
def test_round_trip(name):
    p = parse_problem((DATA / f"{name}.json").read_bytes())
    text = dump_problem(p)
    assert parse_problem(text) == p
    assert dump_problem(parse_problem(text)) == text


@pytest.mark.parametrize("task, code", [("bounds", 0), ("woven", 1)])
def test_run_exit_codes(task, code):
    report, rc = cli.run(parse_problem(MINIMAL if task == "bounds" else
                                       (DATA / "woven_swap.json").read_text()), task)
    assert rc == code == report["exit_code"]


def test_run_c29():
    report, rc = cli.run(parse_problem((DATA / "c29_doubled_onb.json").read_text()), "cert")
    assert rc == 0 and report["verdict"]
    assert report["claimed_lower"] == 1.0 and report["achieved_lower"] == 1.0


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "wkframes.cli", *args],
                          capture_output=True, check=False)


@pytest.mark.parametrize("task, name", GOLDEN)
def test_golden_reports(capsysbinary, task, name):
    path = str(DATA / f"{name}.json")
    outs = []
    for _ in range(2):
        cli.main([task, path, "--json"])
        outs.append(capsysbinary.readouterr().out)
    assert outs[0] == outs[1] == (DATA / f"{name}.golden.json").read_bytes()


def test_subprocess_exit_codes_and_errors(tmp_path):
    r = run_cli("woven", str(DATA / "woven_swap.json"), "--quiet")
    assert r.returncode == 1 and r.stdout == b""
    r = run_cli("cert", str(DATA / "c29_doubled_onb.json"))
    assert r.returncode == 0 and b"elapsed:" in r.stdout
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "frames": {"F": [[1, 0]]}, "task": {"families": ["H"]}}')
    r = run_cli("bounds", str(bad))
    assert r.returncode == 2 and b"ValidationError" in r.stderr
    r = run_cli("bounds", str(tmp_path / "missing.json"))
    assert r.returncode == 2


def test_cli_tol_and_budget_override(capsys):
    rc = cli.main(["woven", str(DATA / "woven_swap.json"), "--json", "--budget", "2"])
    report = json.loads(capsys.readouterr().out)
    assert rc == 1 and not report["exhaustive"]
    rc = cli.main(["kwoven", str(DATA / "woven_swap.json"), "--json"])
    assert rc == 2  # task needs K
