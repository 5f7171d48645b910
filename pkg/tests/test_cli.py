import json
import subprocess
import sys

import pytest

from engel_lab.cli import main
from engel_lab.specs import parse_group_spec


def run_json(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_analyze_s3(capsys):
    code, rep = run_json(capsys, "analyze", "--group", "S3")
    assert code == 0
    g = rep["groups"][0]
    assert g["order"] == 6 and len(g["engel"]["L_set"]) == 3 and len(g["engel"]["R_set"]) == 1
    assert rep["meta"]["seed"] == 0 and rep["meta"]["config"]["cap"] == 4096
    assert g["structure"]["soluble"] and not g["structure"]["nilpotent"]


def test_analyze_wreath_flags(capsys):
    code, rep = run_json(capsys, "analyze", "--group", "wreath(C2,C2xC2)", "--max-n", "4")
    flags = rep["groups"][0]["engel"]["flags"]
    assert code == 0 and not flags["L_2_is_whole"] and flags["L_2_generates"]
    assert sorted(rep["groups"][0]["engel"]["L"]) == ["1", "2", "3", "4"]


def test_analyze_trivial_group(capsys):
    code, rep = run_json(capsys, "analyze", "-g", "C1")
    e = rep["groups"][0]["engel"]
    assert code == 0 and e["L_set"] == e["R_set"] == e["rho"] == ["1"]


def test_reported_specs_round_trip(capsys):
    _, rep = run_json(capsys, "analyze", "-g", "C2 x C2", "-g", "wreath(C2, C2)")
    for g in rep["groups"]:
        assert str(parse_group_spec(g["spec"])) == g["spec"]


def test_exit_codes(capsys, monkeypatch):
    assert main(["analyze", "-g", "C2 x ("]) == 2
    assert "position" in capsys.readouterr().err
    assert main(["analyze", "-g", "wreath(C4,C2xC2xC2)"]) == 3
    assert main(["verify", "--suite", "nope", "-g", "S3"]) == 2
    assert main(["analyze"]) == 2
    assert main(["analyze", "-g", "S3", "--max-n", "0"]) == 2
    monkeypatch.setenv("ENGEL_LAB_CAP", "10")
    assert main(["analyze", "-g", "S4"]) == 3
    monkeypatch.setenv("ENGEL_LAB_CAP", "abc")
    assert main(["analyze", "-g", "S4"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_verify_single_check(capsys):
    code, rep = run_json(capsys, "verify", "--suite", "heineken_inclusions", "--group", "S4")
    assert code == 0 and rep["groups"][0]["checks"][0]["outcome"] == "pass"


def test_verify_gupta_levin_deterministic(capsys):
    args = ["verify", "--suite", "gupta_levin_6engel", "--group", "gl(p=2,k=3)", "--seed", "7"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    rep = json.loads(first)
    assert rep["groups"][0]["checks"][0]["outcome"] == "pass" and rep["meta"]["seed"] == 7


def test_verify_failure_exit_code(capsys):
    code = main(["verify", "--suite", "wreath_separation", "-g", "wreath(C4,C2xC2)"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 1 and rep["groups"][0]["checks"][0]["witness"]["a"] == "a^2"


def test_text_format_and_out_file(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["verify", "--suite", "peng_R,held_Lbar", "-g", "S3", "--format", "text", "--out", str(out)]) == 0
    text = out.read_text()
    assert "S3: order 6" in text and "[pass   ] peng_R" in text
    assert capsys.readouterr().out == ""


def test_zoo_file(tmp_path, capsys):
    zoo = tmp_path / "zoo.txt"
    zoo.write_text("S3\nD8\n")
    code, rep = run_json(capsys, "verify", "--suite", "peng_R", "--zoo", str(zoo))
    assert code == 0 and [g["spec"] for g in rep["groups"]] == ["S3", "D8"]


def test_search_command(capsys):
    code, rep = run_json(capsys, "search", "--predicate", "macdonald_r3", "-g", "C2", "-g", "D8")
    assert code == 0 and rep["search"]["outcome"] == "absent" and rep["search"]["searched"] == ["C2", "D8"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "engel_lab", "analyze", "-g", "C2", "--format", "text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "C2: order 2" in proc.stdout
