"""CLI surface: outputs, exit codes, determinism."""

from __future__ import annotations

import json

from pinwheel.cli import main


def test_patch_command(tmp_path, capsys):
    svg = tmp_path / "p.svg"
    blob = tmp_path / "p.json"
    rc = main(["patch", "-N", "2", "--svg", str(svg), "--json", str(blob)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "25 tiles (13 p0, 12 p1)" in out
    assert svg.read_text().count("<polygon") == 25
    data = json.loads(blob.read_text())
    assert data["level"] == 2 and len(data["tiles"]) == 25


def test_patch_guard(capsys):
    rc = main(["patch", "-N", "11"])
    assert rc == 1
    assert "refused" in capsys.readouterr().err


def test_decompose_pinwheel(tmp_path):
    out = tmp_path / "rule.json"
    svg = tmp_path / "rule.svg"
    rc = main(["decompose", "--pinwheel", "--out", str(out), "--svg", str(svg)])
    assert rc == 0
    rule = json.loads(out.read_text())
    assert [e["proto"] for e in rule["p0"]] == [1, 1, 0, 0, 1]
    assert svg.read_text().count("<svg") == 2


def test_decompose_all(tmp_path, capsys):
    out = tmp_path / "all.json"
    rc = main(["decompose", "--all", "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["count"] >= 1


def test_verify_single_suite(tmp_path):
    out = tmp_path / "r.json"
    rc = main(["verify", "--suite", "ktheory", "--out", str(out)])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True


def test_algebra_commands(capsys):
    rc = main(["algebra", "--action", "multiply",
               "--text", "(1+0r5,0+0r5)*z^1*e[1](0;3,4)",
               "--text", "(1+0r5,0+0r5)*z^1*e[1](0;4,5)"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "(-1+0r5,0+0r5)*z^2*e[1](0;3,5)"
    rc = main(["algebra", "--action", "adjoint", "--text", "(1+0r5,0+0r5)*z^0*e[1](0;3,5)"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "(1+0r5,0+0r5)*z^0*e[1](0;5,3)"
    rc = main(["algebra", "--action", "multiply",
               "--text", "(1+0r5,0+0r5)*z^0*e[1](0;3,5)",
               "--text", "(1+0r5,0+0r5)*z^0*e[1](1;1,2)"])
    assert capsys.readouterr().out.strip() == "0"
    assert rc == 0


def test_algebra_norm(capsys):
    rc = main(["algebra", "--action", "norm", "--text", "(1+0r5,0+0r5)*z^1*e[1](0;3,5)"])
    assert rc == 0
    lo, hi = json.loads(capsys.readouterr().out)
    assert 1 - 1e-9 <= lo <= hi <= 1 + 1e-6


def test_algebra_parse_error(capsys):
    rc = main(["algebra", "--action", "adjoint", "--text", "garbage"])
    assert rc == 1
    assert "parse error" in capsys.readouterr().err


def test_ktheory_commands(capsys):
    assert main(["ktheory", "eq", "0:(1,0)", "1:(2,3)"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["ktheory", "invariants", "0:(1,-1)"]) == 0
    assert capsys.readouterr().out.strip() == "q=0 r=2"
    assert main(["ktheory", "add", "0:(1,0)", "0:(0,1)"]) == 0
    assert capsys.readouterr().out.strip() == "0:(1,1)"
    assert main(["ktheory", "nonsplit", "--bound", "15625"]) == 0


def test_ktheory_parse_error(capsys):
    assert main(["ktheory", "eq", "bogus", "0:(1,0)"]) == 1


def test_simplicity_command(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    rc = main(["simplicity", "--arc-length", "1/10", "--out", str(cert)])
    assert rc == 0
    assert "M = 40" in capsys.readouterr().out
    payload = json.loads(cert.read_text())
    assert payload["M"] == 40 and len(payload["families"]) == 20
    rc = main(["simplicity", "--arc-length", "1.0"])
    assert rc == 0
    assert "M = 2" in capsys.readouterr().out


def test_simplicity_degenerate(capsys):
    rc = main(["simplicity", "--arc-length", "0"])
    assert rc == 1
