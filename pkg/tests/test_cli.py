import ast
import json
import subprocess
import sys
from pathlib import Path

import pytest

from curvecomplex import cli
from curvecomplex import complex as CX
from curvecomplex.lab import fixture_ball


def run(args, capsys):
    code = cli.run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rel_example(capsys):
    code, out, _ = run(["rel", "--surface", "1,1", "a", "b"], capsys)
    assert code == 0 and out == '{"kind":"perp","geo":1,"alg":1}\n'


def test_unsupported_surface_is_usage_error(capsys):
    code, out, err = run(["rel", "--surface", "9,9", "a", "b"], capsys)
    assert code == 1 and out == "" and "usage error" in err


@pytest.mark.parametrize(
    "args",
    [[], ["rel"], ["rel", "--surface", "1,1", "a", "b", "--nope"], ["rel", "--surface", "x", "a", "b"], ["curves", "--surface", "1,1"], ["ball", "--surface", "1,1", "--max-len", "0"], ["rel", "--surface", "1,1", "a", "d"]],
)
def test_usage_errors(args, capsys):
    assert run(args, capsys)[0] == 1


def test_product_and_reduce(capsys):
    assert json.loads(run(["product", "--surface", "1,1", "a", "b"], capsys)[1]) == {"product": "ab", "reverse": "aB"}
    assert json.loads(run(["reduce", "--surface", "1,1", "--fn", "a", "abb"], capsys)[1]) == {"b1": "ab", "b2": "b"}
    code, out, _ = run(["express", "--surface", "1,1", "--fn", "a", "abbb"], capsys)
    assert code == 0 and json.loads(out)[0] == "mul"
    assert run(["reduce", "--surface", "1,1", "--fn", "a", "b"], capsys)[0] == 1


def test_ball_export_matches_library(capsys, tmp_path):
    target = tmp_path / "ball.json"
    code, out, _ = run(["ball", "--surface", "1,2", "--max-len", "4", "--export", "json", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_bytes() == CX.export(fixture_ball(1, 2, 4), "json")
    code, out, _ = run(["ball", "--surface", "1,1", "--max-len", "2", "--export", "dot"], capsys)
    assert out.startswith("graph C {")


def test_budget_exhausted(capsys):
    assert run(["curves", "enum", "--surface", "1,3", "--max-len", "6", "--budget", "10"], capsys)[0] == 3


def test_curves_enum_text(capsys):
    code, out, _ = run(["curves", "enum", "--surface", "1,1", "--max-len", "2", "--format", "text"], capsys)
    assert out.split() == ["a", "b", "ab", "aB"]


def test_surface_info(capsys):
    d = json.loads(run(["surface", "info", "--surface", "1,1"], capsys)[1])
    assert d["boundary_walks"] == ["abAB"] and d["rank"] == 2


def test_chart_commands(capsys):
    code, out, _ = run(["chart", "fit", "--surface", "1,1", "--max-len", "3", "a", "b"], capsys)
    assert code == 0 and json.loads(out)["coord"]["ab"] == "1/1"
    code, out, _ = run(["chart", "transitions", "--surface", "1,1", "--max-len", "4", "a,b", "ab,b"], capsys)
    assert code == 0 and json.loads(out)["matrix"] is not None
    assert run(["chart", "fit", "--surface", "0,5", "--max-len", "3", "ab", "cd"], capsys)[0] == 2


def test_verify_pentagon(capsys):
    code, out, _ = run(["verify", "pentagon", "--surface", "0,5", "--max-len", "6"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == [] and rep["bounded"] is True


def test_verify_wrong_surface(capsys):
    assert run(["verify", "pentagon", "--surface", "1,2", "--max-len", "3"], capsys)[0] == 1


def test_lift(capsys):
    d = json.loads(run(["lift", "ab"], capsys)[1])
    assert d["class"] == "nonseparating"


def test_config_merge_with_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"surface": "1,1", "max_len": 2}))
    code, out, _ = run(["curves", "enum", "--config", str(cfg)], capsys)
    assert json.loads(out) == ["a", "b", "ab", "aB"]
    code, out, _ = run(["curves", "enum", "--config", str(cfg), "--max-len", "1"], capsys)
    assert json.loads(out) == ["a", "b"]
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(["curves", "enum", "--config", str(cfg)], capsys)[0] == 1


def test_output_is_byte_deterministic():
    args = [sys.executable, "-m", "curvecomplex", "ball", "--surface", "0,5", "--max-len", "3", "--jobs", "1"]
    first = subprocess.run(args, capture_output=True, check=True).stdout
    second = subprocess.run(args[:-1] + ["2"], capture_output=True, check=True).stdout
    assert first == second and first


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        cli.run(["--version"])
    assert e.value.code == 0
    assert "curvecomplex" in capsys.readouterr().out


def test_cli_is_a_thin_adapter():
    # the CLI may only import the public library modules, never the tree or word internals
    tree = ast.parse(Path(cli.__file__).read_text())
    mods = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom) and n.level == 1}
    assert "tree" not in mods
    names = {a.name for n in ast.walk(tree) if isinstance(n, ast.ImportFrom) and n.module == "words" for a in n.names}
    assert names <= {"WordError"}
