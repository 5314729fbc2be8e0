import json
import subprocess
import sys

import pytest

from nfold.cli import main
from nfold.serialize import load_json
from nfold.trace import verify


def test_check_examples(capsys):
    assert main(["check", "199", "--folds", "9"]) == 0
    assert "required n = 9" in capsys.readouterr().out
    assert main(["check", "199", "--folds", "8"]) == 2


def test_msect(capsys, tmp_path):
    out = tmp_path / "t.json"
    svg = tmp_path / "t.svg"
    assert main(["msect", "--angle-deg", "60", "--parts", "3", "--json", str(out), "--svg", str(svg)]) == 0
    text = capsys.readouterr().out
    assert "= 20 deg" in text
    trace = load_json(out.read_bytes())
    assert verify(trace).ok
    assert f"fold_width = {trace.fold_width}" in text
    assert svg.read_bytes().startswith(b"<?xml")


def test_polygon(capsys, tmp_path):
    out = tmp_path / "p.json"
    assert main(["polygon", "7", "--folds", "1", "--json", str(out)]) == 0
    trace = load_json(out.read_bytes())
    assert f"fold_width = {trace.fold_width}" in capsys.readouterr().out
    assert main(["polygon", "11", "--folds", "2"]) == 2


def test_solve(capsys):
    assert main(["solve", "--coeffs", "1,0,0,0,0,-32"]) == 0
    out = capsys.readouterr().out
    assert "root 2 " in out and "fold_width = 3" in out
    assert main(["solve", "--coeffs", "1,0,1"]) == 0


def test_axiom(capsys, tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"points": [[0, 0], [2, 0]], "lines": []}))
    out = tmp_path / "o.json"
    assert main(["axiom", "1", "--json", str(inst), "--out", str(out)]) == 0
    assert "fold 1 x + 0 y + -1 = 0" in capsys.readouterr().out
    assert verify(load_json(out.read_bytes())).ok
    inst.write_text(json.dumps({"points": [[0, 0]], "lines": []}))
    assert main(["axiom", "1", "--json", str(inst)]) == 1


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["check"], ["check", "x"], ["check", "2"], ["msect", "--parts", "3"],
    ["solve", "--coeffs", "a,b"], ["solve", "--coeffs", "0,1"], ["polygon", "2"],
    ["axiom", "1", "--json", "/nonexistent.json"],
])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nfold", "check", "17", "--folds", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "required n = 1" in proc.stdout
